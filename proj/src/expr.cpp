#include "inj/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace inj {

ExprPtr Expr::constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->value = v;
    return e;
}

ExprPtr Expr::variable(int index, std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Variable;
    e->var_index = index;
    e->var_name = std::move(name);
    return e;
}

ExprPtr Expr::unary(UnOp op, ExprPtr child) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->un_op = op;
    e->lhs = std::move(child);
    return e;
}

ExprPtr Expr::binary(BinOp op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->bin_op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

namespace {

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Type type = Type::End;
    std::size_t offset = 0;  // byte offset of the first character
    double number = 0.0;
    bool number_is_integer = false;
    std::string ident = {};
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Token::Type::End, start};
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {Token::Type::Plus, start};
            case '-': ++pos_; return {Token::Type::Minus, start};
            case '*': ++pos_; return {Token::Type::Star, start};
            case '/': ++pos_; return {Token::Type::Slash, start};
            case '^': ++pos_; return {Token::Type::Caret, start};
            case '(': ++pos_; return {Token::Type::LParen, start};
            case ')': ++pos_; return {Token::Type::RParen, start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            Token t{Token::Type::Ident, start};
            t.ident = std::string(src_.substr(start, end - start));
            pos_ = end;
            return t;
        }
        throw ParseError(start, "a number, name, operator or parenthesis");
    }

private:
    Token lex_number(std::size_t start) {
        std::size_t end = pos_;
        bool dot = false, exponent = false;
        while (end < src_.size()) {
            const char ch = src_[end];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                ++end;
            } else if (ch == '.' && !dot && !exponent) {
                dot = true;
                ++end;
            } else if ((ch == 'e' || ch == 'E') && !exponent && end + 1 < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[end + 1])) ||
                        ((src_[end + 1] == '+' || src_[end + 1] == '-') && end + 2 < src_.size() &&
                         std::isdigit(static_cast<unsigned char>(src_[end + 2]))))) {
                exponent = true;
                ++end;
                if (src_[end] == '+' || src_[end] == '-') ++end;
            } else {
                break;
            }
        }
        Token t{Token::Type::Number, start};
        const char* first = src_.data() + start;
        const char* last = src_.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, t.number);
        if (ec != std::errc() || ptr != last)
            throw ParseError(start, "a valid numeric literal");
        t.number_is_integer = !dot && !exponent;
        pos_ = end;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> variables)
        : lexer_(src), variables_(variables) {
        advance();
    }

    ExprPtr parse_all() {
        ExprPtr e = parse_sum();
        if (cur_.type != Token::Type::End)
            throw ParseError(cur_.offset, "end of input or an operator");
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    bool accept(Token::Type t) {
        if (cur_.type != t) return false;
        advance();
        return true;
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_product();
        for (;;) {
            if (cur_.type == Token::Type::Plus) {
                advance();
                e = Expr::binary(BinOp::Add, e, parse_product());
            } else if (cur_.type == Token::Type::Minus) {
                advance();
                e = Expr::binary(BinOp::Sub, e, parse_product());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_product() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (cur_.type == Token::Type::Star) {
                advance();
                e = Expr::binary(BinOp::Mul, e, parse_unary());
            } else if (cur_.type == Token::Type::Slash) {
                advance();
                e = Expr::binary(BinOp::Div, e, parse_unary());
            } else {
                return e;
            }
        }
    }

    // Unary minus binds looser than ^: -x^2 parses as -(x^2).
    ExprPtr parse_unary() {
        if (cur_.type == Token::Type::Minus) {
            advance();
            return Expr::unary(UnOp::Neg, parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (cur_.type != Token::Type::Caret) return base;
        const std::size_t caret_at = cur_.offset;
        advance();
        // Right-associative by grammar, but the right side must reduce to a
        // non-negative integer literal, so anything else is rejected here.
        const std::size_t exp_at = cur_.offset;
        if (cur_.type != Token::Type::Number || !cur_.number_is_integer)
            throw NonIntegerExponent(cur_.type == Token::Type::End ? caret_at : exp_at);
        const double exponent = cur_.number;
        advance();
        if (cur_.type == Token::Type::Caret)
            throw NonIntegerExponent(cur_.offset);
        if (exponent < 0.0 || exponent != std::floor(exponent) || exponent > 1e9)
            throw NonIntegerExponent(exp_at);
        return Expr::binary(BinOp::Pow, std::move(base), Expr::constant(exponent));
    }

    ExprPtr parse_atom() {
        switch (cur_.type) {
            case Token::Type::Number: {
                ExprPtr e = Expr::constant(cur_.number);
                advance();
                return e;
            }
            case Token::Type::LParen: {
                advance();
                ExprPtr e = parse_sum();
                if (!accept(Token::Type::RParen))
                    throw ParseError(cur_.offset, "')'");
                return e;
            }
            case Token::Type::Ident:
                return parse_name();
            default:
                throw ParseError(cur_.offset, "a number, variable, function call or '('");
        }
    }

    ExprPtr parse_name() {
        const Token name = cur_;
        advance();
        if (cur_.type == Token::Type::LParen) {
            UnOp op;
            if (name.ident == "exp") op = UnOp::Exp;
            else if (name.ident == "sin") op = UnOp::Sin;
            else if (name.ident == "cos") op = UnOp::Cos;
            else throw UnknownVariable(name.offset, name.ident);
            advance();
            ExprPtr arg = parse_sum();
            if (!accept(Token::Type::RParen))
                throw ParseError(cur_.offset, "')'");
            return Expr::unary(op, std::move(arg));
        }
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (variables_[i] == name.ident)
                return Expr::variable(static_cast<int>(i), name.ident);
        }
        throw UnknownVariable(name.offset, name.ident);
    }

    Lexer lexer_;
    std::span<const std::string> variables_;
    Token cur_;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return 5;
        case Expr::Kind::Unary:
            return e.un_op == UnOp::Neg ? 2 : 5;  // function calls self-delimit
        case Expr::Kind::Binary:
            switch (e.bin_op) {
                case BinOp::Add:
                case BinOp::Sub: return 1;
                case BinOp::Mul:
                case BinOp::Div: return 2;
                case BinOp::Pow: return 4;
            }
    }
    return 0;
}

void print_rec(const Expr& e, std::ostream& os, int parent_prec, bool right_operand) {
    const int prec = precedence(e);
    const bool parens =
        prec < parent_prec || (prec == parent_prec && right_operand && prec != 5);
    if (parens) os << '(';
    switch (e.kind) {
        case Expr::Kind::Constant: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << e.value;
            std::string s = tmp.str();
            if (e.value < 0.0) os << '(' << s << ')';
            else os << s;
            break;
        }
        case Expr::Kind::Variable:
            os << e.var_name;
            break;
        case Expr::Kind::Unary:
            switch (e.un_op) {
                case UnOp::Neg:
                    os << '-';
                    print_rec(*e.lhs, os, 3, true);
                    break;
                case UnOp::Exp: os << "exp("; print_rec(*e.lhs, os, 0, false); os << ')'; break;
                case UnOp::Sin: os << "sin("; print_rec(*e.lhs, os, 0, false); os << ')'; break;
                case UnOp::Cos: os << "cos("; print_rec(*e.lhs, os, 0, false); os << ')'; break;
            }
            break;
        case Expr::Kind::Binary: {
            const char* op = nullptr;
            switch (e.bin_op) {
                case BinOp::Add: op = " + "; break;
                case BinOp::Sub: op = " - "; break;
                case BinOp::Mul: op = "*"; break;
                case BinOp::Div: op = "/"; break;
                case BinOp::Pow: op = "^"; break;
            }
            // The base of ^ must reparse as an atom, so anything weaker
            // than an atom gets parenthesized.
            print_rec(*e.lhs, os, e.bin_op == BinOp::Pow ? 5 : prec, false);
            os << op;
            if (e.bin_op == BinOp::Pow)
                os << static_cast<long long>(e.rhs->value);
            else
                print_rec(*e.rhs, os, prec, true);
            break;
        }
    }
    if (parens) os << ')';
}

} // namespace

ExprPtr parse(std::string_view source, std::span<const std::string> variables) {
    return Parser(source, variables).parse_all();
}

std::string print(const Expr& e) {
    std::ostringstream os;
    print_rec(e, os, 0, false);
    return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant:
            return a.value == b.value;
        case Expr::Kind::Variable:
            return a.var_index == b.var_index && a.var_name == b.var_name;
        case Expr::Kind::Unary:
            return a.un_op == b.un_op && structurally_equal(*a.lhs, *b.lhs);
        case Expr::Kind::Binary:
            return a.bin_op == b.bin_op && structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
    }
    return false;
}

MapSpec make_real_map(std::span<const std::string> variables,
                      std::span<const std::string> component_sources, Box domain) {
    const int n = static_cast<int>(variables.size());
    if (n < 1 || n > kMaxDimension)
        throw DimensionMismatch("a real map needs between 1 and 8 variables");
    if (static_cast<int>(component_sources.size()) != n)
        throw DimensionMismatch("component count must equal variable count");
    if (domain.size() != n)
        throw DimensionMismatch("domain must provide one interval per variable");
    MapSpec m;
    m.kind = MapSpec::Kind::RealMap;
    m.variables.assign(variables.begin(), variables.end());
    for (const std::string& src : component_sources)
        m.components.push_back(parse(src, variables));
    m.domain = std::move(domain);
    return m;
}

MapSpec make_complex_function(std::string_view u_source, std::string_view v_source,
                              Box domain) {
    if (domain.size() != 2)
        throw DimensionMismatch("a complex function needs a 2-dimensional domain");
    MapSpec m;
    m.kind = MapSpec::Kind::ComplexFunction;
    m.variables = {"x", "y"};
    m.components.push_back(parse(u_source, m.variables));
    m.components.push_back(parse(v_source, m.variables));
    m.domain = std::move(domain);
    return m;
}

} // namespace inj
