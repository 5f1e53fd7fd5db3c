#ifndef INJ_EXPR_HPP
#define INJ_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inj/box.hpp"
#include "inj/dual.hpp"
#include "inj/errors.hpp"

namespace inj {

enum class UnOp { Neg, Exp, Sin, Cos };
enum class BinOp { Add, Sub, Mul, Div, Pow };

// Immutable expression AST.  Nodes are shared; evaluation is pure, so one
// tree may be evaluated concurrently from any number of threads.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Constant, Variable, Unary, Binary };

    Kind kind;
    double value = 0.0;       // Constant (also the exponent literal under Pow)
    int var_index = -1;       // Variable: position in the declared variable list
    std::string var_name;     // Variable
    UnOp un_op = UnOp::Neg;   // Unary
    BinOp bin_op = BinOp::Add;  // Binary
    ExprPtr lhs;              // Unary child / Binary left
    ExprPtr rhs;              // Binary right (a Constant node under Pow)

    static ExprPtr constant(double v);
    static ExprPtr variable(int index, std::string name);
    static ExprPtr unary(UnOp op, ExprPtr child);
    static ExprPtr binary(BinOp op, ExprPtr l, ExprPtr r);
};

// Parse an infix expression over the declared variable names.
// Precedence: ^ > unary - > * / > + -; all left-associative except ^.
// The exponent of ^ must be a non-negative integer literal.
ExprPtr parse(std::string_view source, std::span<const std::string> variables);

// Canonical infix rendering; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Evaluate over any member of the numeric tower (double, complex, dual,
// Interval, ComplexBox, interval-valued dual).  `bindings[i]` is the value
// of the variable with index i.
template <class N>
N eval(const Expr& e, std::span<const N> bindings) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return num::constant<N>(e.value);
        case Expr::Kind::Variable:
            return bindings[static_cast<std::size_t>(e.var_index)];
        case Expr::Kind::Unary: {
            N c = eval<N>(*e.lhs, bindings);
            switch (e.un_op) {
                case UnOp::Neg: return -c;
                case UnOp::Exp: { using std::exp; return exp(c); }
                case UnOp::Sin: { using std::sin; return sin(c); }
                case UnOp::Cos: { using std::cos; return cos(c); }
            }
            throw Error("unreachable unary op");
        }
        case Expr::Kind::Binary: {
            if (e.bin_op == BinOp::Pow)
                return pow_int(eval<N>(*e.lhs, bindings), static_cast<int>(e.rhs->value));
            N l = eval<N>(*e.lhs, bindings);
            N r = eval<N>(*e.rhs, bindings);
            switch (e.bin_op) {
                case BinOp::Add: return l + r;
                case BinOp::Sub: return l - r;
                case BinOp::Mul: return l * r;
                case BinOp::Div:
                    num::check_divisor(r);
                    return l / r;
                default: break;
            }
            throw Error("unreachable binary op");
        }
    }
    throw Error("unreachable node kind");
}

// A problem instance: either an R^n -> R^n component map or a complex
// function given by its real and imaginary parts u, v over variables x, y.
struct MapSpec {
    enum class Kind { RealMap, ComplexFunction };

    Kind kind = Kind::RealMap;
    std::vector<std::string> variables;
    std::vector<ExprPtr> components;  // n components, or {u, v}
    Box domain;

    int dimension() const { return static_cast<int>(variables.size()); }

    const Expr& u() const { return *components.at(0); }
    const Expr& v() const { return *components.at(1); }
};

inline constexpr int kMaxDimension = 8;

// Parse and validate an n-dimensional component map.  Throws
// DimensionMismatch / parse errors.
MapSpec make_real_map(std::span<const std::string> variables,
                      std::span<const std::string> component_sources, Box domain);

// Parse and validate a complex function u + iv over variables x, y.
MapSpec make_complex_function(std::string_view u_source, std::string_view v_source,
                              Box domain);

} // namespace inj

#endif
