#include "inj/holo.hpp"

#include <complex>
#include <map>

namespace inj {

namespace {

using Cx = std::complex<double>;

// Bivariate polynomial with complex coefficients, keyed by (x power, y power).
using Poly = std::map<std::pair<int, int>, Cx>;

void add_term(Poly& p, std::pair<int, int> key, Cx c) {
    Cx& slot = p[key];
    slot += c;
    if (slot == Cx(0.0)) p.erase(key);
}

Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [k, c] : b) add_term(r, k, c);
    return r;
}

Poly negate(const Poly& a) {
    Poly r;
    for (const auto& [k, c] : a) r[k] = -c;
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            add_term(r, {ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

Poly constant(Cx c) {
    Poly r;
    if (c != Cx(0.0)) r[{0, 0}] = c;
    return r;
}

bool is_constant(const Poly& p, Cx& out) {
    if (p.empty()) {
        out = Cx(0.0);
        return true;
    }
    if (p.size() == 1 && p.begin()->first == std::pair<int, int>(0, 0)) {
        out = p.begin()->second;
        return true;
    }
    return false;
}

Poly expand(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return constant(Cx(e.value));
        case Expr::Kind::Variable:  // the single declared variable z = x + iy
            return {{{1, 0}, Cx(1.0)}, {{0, 1}, Cx(0.0, 1.0)}};
        case Expr::Kind::Unary:
            if (e.un_op == UnOp::Neg) return negate(expand(*e.lhs));
            throw ConfigError("holo shorthand accepts polynomials in z only "
                              "(no exp/sin/cos)");
        case Expr::Kind::Binary: {
            if (e.bin_op == BinOp::Pow) {
                const int k = static_cast<int>(e.rhs->value);
                Poly base = expand(*e.lhs);
                Poly r = constant(Cx(1.0));
                for (int i = 0; i < k; ++i) r = mul(r, base);
                return r;
            }
            Poly l = expand(*e.lhs);
            Poly r = expand(*e.rhs);
            switch (e.bin_op) {
                case BinOp::Add: return add(l, r);
                case BinOp::Sub: return add(l, negate(r));
                case BinOp::Mul: return mul(l, r);
                case BinOp::Div: {
                    Cx c;
                    if (!is_constant(r, c) || c == Cx(0.0))
                        throw ConfigError("holo shorthand: division only by a "
                                          "nonzero constant");
                    Poly q;
                    for (const auto& [k, v] : l) q[k] = v / c;
                    return q;
                }
                default: break;
            }
            throw ConfigError("unsupported operator in holo shorthand");
        }
    }
    throw ConfigError("unsupported node in holo shorthand");
}

ExprPtr monomial(double coeff, int xp, int yp) {
    ExprPtr term;
    auto append = [&](ExprPtr factor) {
        term = term ? Expr::binary(BinOp::Mul, std::move(term), std::move(factor))
                    : std::move(factor);
    };
    if (coeff != 1.0 || (xp == 0 && yp == 0)) append(Expr::constant(coeff));
    if (xp == 1) append(Expr::variable(0, "x"));
    else if (xp > 1)
        append(Expr::binary(BinOp::Pow, Expr::variable(0, "x"),
                            Expr::constant(static_cast<double>(xp))));
    if (yp == 1) append(Expr::variable(1, "y"));
    else if (yp > 1)
        append(Expr::binary(BinOp::Pow, Expr::variable(1, "y"),
                            Expr::constant(static_cast<double>(yp))));
    return term;
}

ExprPtr build_component(const Poly& p, bool imaginary_part) {
    ExprPtr sum;
    for (const auto& [key, c] : p) {
        const double coeff = imaginary_part ? c.imag() : c.real();
        if (coeff == 0.0) continue;
        ExprPtr term = monomial(coeff, key.first, key.second);
        sum = sum ? Expr::binary(BinOp::Add, std::move(sum), std::move(term))
                  : std::move(term);
    }
    return sum ? sum : Expr::constant(0.0);
}

} // namespace

HoloExpansion expand_holomorphic(std::string_view z_poly_source) {
    const std::string vars[] = {std::string("z")};
    const ExprPtr ast = parse(z_poly_source, vars);
    const Poly p = expand(*ast);
    return {build_component(p, false), build_component(p, true)};
}

} // namespace inj
