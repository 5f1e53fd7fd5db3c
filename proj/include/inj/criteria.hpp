#ifndef INJ_CRITERIA_HPP
#define INJ_CRITERIA_HPP

#include <complex>

#include "inj/calculus.hpp"

namespace inj {

// The linear operator A of the relative-monotonicity conditions,
// identified with its matrix.
using LinearOperator = SquareMatrix<double>;

// Witness pairs below this nondegeneracy level make the associated 2x2
// matrix numerically singular and are rejected.
inline constexpr double kDeltaMin = 1e-9;

// Cauchy-Riemann residual tolerance: u and v are entered independently, so
// holomorphy is verified against this threshold, never assumed.
inline constexpr double kHoloTol = 1e-10;

// Determinant tolerance below which A counts as singular.
inline constexpr double kSingularTol = 1e-12;

// The pair (w1, w2) parameterizing the two-witness injectivity criterion,
// normalized to |w1|^2 + |w2|^2 = 1 on construction.
struct WitnessPair {
    std::complex<double> w1;
    std::complex<double> w2;
    double delta = 0.0;  // re w1 im w2 - re w2 im w1, after normalization

    // Normalizes the raw pair; delta is recomputed afterwards.
    static WitnessPair make(std::complex<double> raw_w1, std::complex<double> raw_w2);

    bool valid() const { return std::abs(delta) > kDeltaMin; }

    // The matrix ((a, c), (b, d)) with w1 = a + ib, w2 = c + id.
    SquareMatrix<double> matrix() const;
};

enum class CriterionKind { Sylvester, Eq3, Mocanu, MocanuConjugate, Anww, Segment };

enum class MinorSign { Positive, Negative };

// Criterion margin over a point or a box.  A positive lower bound over the
// whole region means the strict inequality holds everywhere in it.
struct Margin {
    Interval value;
    CriterionKind criterion = CriterionKind::Sylvester;
    Box region;
};

// --- Sylvester minor condition -------------------------------------------
// Margin of the leading-principal-minor condition on
// M(x) = A^T J_T(x) + J_T^T(x) A: min over m of d_m for the positive
// branch, min over m of (-1)^m d_m for the negative branch.

// Margin computed from an already-assembled symmetric matrix.
double minors_margin(const SquareMatrix<double>& m, MinorSign sign);
Interval minors_margin(const SquareMatrix<Interval>& m, MinorSign sign);

Margin sylvester_margin(const MapSpec& t, const LinearOperator& a,
                        std::span<const double> at, MinorSign sign = MinorSign::Positive);
Margin sylvester_margin(const MapSpec& t, const LinearOperator& a, const Box& over,
                        MinorSign sign = MinorSign::Positive);

// --- Two-witness criterion ------------------------------------------------
// LHS = re(dz w1 + dzbar conj(w1)) + im(dz w2 + dzbar conj(w2))
// RHS = |dz (w2 - i w1) + dzbar conj(w2 + i w1)|
// margin = LHS - RHS.  The sides are exposed raw (no normalization) for
// identity checks; eq3_margin applies the normalized witness pair.

struct Eq3Sides {
    double lhs, rhs;
};
struct Eq3SidesBounds {
    Interval lhs, rhs;
};

Eq3Sides eq3_sides(std::complex<double> dz, std::complex<double> dzbar,
                   std::complex<double> w1, std::complex<double> w2);
Eq3SidesBounds eq3_sides(const ComplexBox& dz, const ComplexBox& dzbar,
                         std::complex<double> w1, std::complex<double> w2);

Margin eq3_margin(const MapSpec& f, const WitnessPair& w, std::complex<double> at);
Margin eq3_margin(const MapSpec& f, const WitnessPair& w, const Box& over);

// --- Mocanu condition and conjugate variant -------------------------------
// standard:  re(dz e^{i gamma}) - |dzbar|
// conjugate: re(dzbar e^{i gamma}) - |dz|

enum class MocanuVariant { Standard, Conjugate };

Margin mocanu_margin(const MapSpec& f, double gamma, MocanuVariant variant,
                     std::complex<double> at);
Margin mocanu_margin(const MapSpec& f, double gamma, MocanuVariant variant,
                     const Box& over);

// --- Half-plane condition for holomorphic functions -----------------------
// margin = re(dz e^{i gamma}); requires the Cauchy-Riemann residual |dzbar|
// to stay below kHoloTol (checked pointwise / on a deterministic sample of
// the box), else NotHolomorphic.

Margin anww_margin(const MapSpec& f, double gamma, std::complex<double> at);
Margin anww_margin(const MapSpec& f, double gamma, const Box& over);

// Largest sampled Cauchy-Riemann residual |dzbar| over a deterministic
// grid of the box (corners included).
double max_cr_residual(const MapSpec& f, const Box& over, int grid = 5);

// --- Determinant form of the squared criterion ----------------------------
// det of the symmetric matrix
//   ( 2 re df(w1)              re df(w2) + im df(w1) )
//   ( re df(w2) + im df(w1)    2 im df(w2)           )
// which equals LHS^2 - RHS^2 of the two-witness criterion; used as an
// independent cross-check of eq3_margin.

struct DetFormResult {
    double det_value;
    double re_df_w1;
};

DetFormResult det_form_check(const MapSpec& f, const WitnessPair& w,
                             std::complex<double> at);

// --- Sampled segment condition --------------------------------------------
// min over `samples` equally spaced interior points z of segment (x, y) of
// <J_T(z)(y - x), A(y - x)>.  Diagnostic companion to the box certificate,
// not rigorous.

double segment_condition(const MapSpec& t, const LinearOperator& a,
                         std::span<const double> x, std::span<const double> y,
                         int samples);

// Throws SingularA when |det A| <= kSingularTol.
void require_nonsingular(const LinearOperator& a);

} // namespace inj

#endif
