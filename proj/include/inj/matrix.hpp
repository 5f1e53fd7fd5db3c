#ifndef INJ_MATRIX_HPP
#define INJ_MATRIX_HPP

#include <array>
#include <cmath>
#include <vector>

#include "inj/errors.hpp"
#include "inj/interval.hpp"

namespace inj {

// Dense square matrix of order n <= 8, value semantics.
template <class T>
class SquareMatrix {
public:
    static constexpr int kMaxOrder = 8;

    SquareMatrix() = default;
    explicit SquareMatrix(int n) : n_(n) {
        if (n < 1 || n > kMaxOrder)
            throw DimensionMismatch("matrix order must be between 1 and 8");
        data_.fill(T{});
    }

    static SquareMatrix identity(int n) {
        SquareMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }

    int order() const { return n_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
    const T& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i * n_ + j)];
    }

    SquareMatrix transposed() const {
        SquareMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

private:
    int n_ = 1;
    std::array<T, kMaxOrder * kMaxOrder> data_{};
};

template <class T>
SquareMatrix<T> operator+(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
    if (a.order() != b.order()) throw DimensionMismatch("matrix orders differ");
    SquareMatrix<T> r(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

template <class T>
SquareMatrix<T> operator*(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
    if (a.order() != b.order()) throw DimensionMismatch("matrix orders differ");
    SquareMatrix<T> r(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) {
            T acc = a(i, 0) * b(0, j);
            for (int k = 1; k < a.order(); ++k) acc = acc + a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}

namespace detail {

// Determinant of the leading m x m submatrix by cofactor expansion along
// the first row.  Generic over the entry type; exponential in m, used for
// small m and as the fallback when interval pivoting fails.
template <class T>
T cofactor_det(const SquareMatrix<T>& a, const std::vector<int>& rows,
               const std::vector<int>& cols) {
    const int m = static_cast<int>(rows.size());
    if (m == 1) return a(rows[0], cols[0]);
    if (m == 2)
        return a(rows[0], cols[0]) * a(rows[1], cols[1]) -
               a(rows[0], cols[1]) * a(rows[1], cols[0]);
    T acc{};
    bool first = true;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (int j = 0; j < m; ++j) {
        std::vector<int> sub_cols;
        sub_cols.reserve(static_cast<std::size_t>(m - 1));
        for (int k = 0; k < m; ++k)
            if (k != j) sub_cols.push_back(cols[static_cast<std::size_t>(k)]);
        T term = a(rows[0], cols[static_cast<std::size_t>(j)]) *
                 cofactor_det(a, sub_rows, sub_cols);
        if (j % 2 == 1) term = -term;
        if (first) {
            acc = term;
            first = false;
        } else {
            acc = acc + term;
        }
    }
    return acc;
}

template <class T>
T leading_det_cofactor(const SquareMatrix<T>& a, int m) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    return cofactor_det(a, idx, idx);
}

} // namespace detail

// Determinant of the leading m x m submatrix, point entries, via LU with
// partial pivoting.
double leading_minor(const SquareMatrix<double>& a, int m);

// All n leading principal minors d_1..d_n via fraction-free (Bareiss)
// elimination, whose pivots are exactly the leading minors.  Falls back to
// per-minor LU if a pivot vanishes mid-elimination.
std::vector<double> leading_minors(const SquareMatrix<double>& a);

double determinant(const SquareMatrix<double>& a);

// Enclosure of the leading m x m minor over interval entries: cofactor
// expansion for m <= 4, interval Gaussian elimination with mignitude
// pivoting for larger m (cofactor fallback when no pivot clears zero).
Interval leading_minor(const SquareMatrix<Interval>& a, int m);

std::vector<Interval> leading_minors(const SquareMatrix<Interval>& a);

} // namespace inj

#endif
