#include "psmech/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>

namespace psmech {

namespace {

// ---------------------------------------------------------------- tokenizer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    double number = 0.0;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= s_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        const char c = s_[pos_];
        switch (c) {
            case '+': tok_.kind = Tok::Plus; ++pos_; return;
            case '-': tok_.kind = Tok::Minus; ++pos_; return;
            case '*': tok_.kind = Tok::Star; ++pos_; return;
            case '/': tok_.kind = Tok::Slash; ++pos_; return;
            case '^': tok_.kind = Tok::Caret; ++pos_; return;
            case '(': tok_.kind = Tok::LParen; ++pos_; return;
            case ')': tok_.kind = Tok::RParen; ++pos_; return;
            case ',': tok_.kind = Tok::Comma; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lexNumber();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    void lexNumber() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) pos_ = mark;
            else
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        const std::string text = s_.substr(start, pos_ - start);
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size())
            throw ParseError("malformed number '" + text + "'", start);
        tok_.kind = Tok::Number;
        tok_.number = v;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    Token tok_;
};

// ------------------------------------------------------------------ parser

std::optional<ExprOp> functionOp(const std::string& name) {
    if (name == "sin") return ExprOp::Sin;
    if (name == "cos") return ExprOp::Cos;
    if (name == "tan") return ExprOp::Tan;
    if (name == "exp") return ExprOp::Exp;
    if (name == "log") return ExprOp::Log;
    if (name == "sqrt") return ExprOp::Sqrt;
    return std::nullopt;
}

ExprNodePtr makeNode(ExprOp op, ExprNodePtr a = nullptr, ExprNodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

ExprNodePtr makeConst(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Const;
    n->value = v;
    return n;
}

class Parser {
public:
    Parser(const std::string& text, int dim, const ParamMap& params,
           const std::vector<std::string>& var_names)
        : lex_(text), dim_(dim), params_(params), var_names_(var_names) {}

    ExprNodePtr run() {
        ExprNodePtr e = parseExpr();
        if (lex_.peek().kind != Tok::End)
            throw ParseError("unexpected trailing input", lex_.peek().offset);
        return e;
    }

private:
    ExprNodePtr parseExpr() {
        ExprNodePtr e = parseTerm();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::Plus) {
                lex_.take();
                e = makeNode(ExprOp::Add, e, parseTerm());
            } else if (k == Tok::Minus) {
                lex_.take();
                e = makeNode(ExprOp::Sub, e, parseTerm());
            } else {
                return e;
            }
        }
    }

    ExprNodePtr parseTerm() {
        ExprNodePtr e = parseUnary();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::Star) {
                lex_.take();
                e = makeNode(ExprOp::Mul, e, parseUnary());
            } else if (k == Tok::Slash) {
                lex_.take();
                e = makeNode(ExprOp::Div, e, parseUnary());
            } else {
                return e;
            }
        }
    }

    ExprNodePtr parseUnary() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            ExprNodePtr inner = parseUnary();
            if (inner->op == ExprOp::Const) return makeConst(-inner->value);
            return makeNode(ExprOp::Neg, inner);
        }
        return parsePower();
    }

    ExprNodePtr parsePower() {
        ExprNodePtr base = parsePrimary();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            return makeNode(ExprOp::Pow, base, parseUnary());
        }
        return base;
    }

    ExprNodePtr parsePrimary() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Tok::Number: return makeConst(t.number);
            case Tok::LParen: {
                ExprNodePtr e = parseExpr();
                expect(Tok::RParen, ")");
                return e;
            }
            case Tok::Ident: return resolveIdent(t);
            default: throw ParseError("expected a number, name, or '('", t.offset);
        }
    }

    ExprNodePtr resolveIdent(const Token& t) {
        if (auto fn = functionOp(t.text)) {
            if (lex_.peek().kind != Tok::LParen)
                throw ParseError("function '" + t.text + "' requires one argument", t.offset);
            lex_.take();
            ExprNodePtr arg = parseExpr();
            if (lex_.peek().kind == Tok::Comma)
                throw ParseError("function '" + t.text + "' takes exactly one argument",
                                 lex_.peek().offset);
            expect(Tok::RParen, ")");
            return makeNode(*fn, arg);
        }
        // Alias names first, then canonical xk, then parameters.
        for (std::size_t i = 0; i < var_names_.size(); ++i) {
            if (var_names_[i] == t.text) return makeVar(static_cast<int>(i), t.text, t.offset);
        }
        if (t.text.size() >= 2 && t.text[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < t.text.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) digits = false;
            if (digits) {
                const int idx = std::atoi(t.text.c_str() + 1) - 1;
                return makeVar(idx, t.text, t.offset);
            }
        }
        if (params_.count(t.text)) {
            auto n = std::make_shared<ExprNode>();
            n->op = ExprOp::Param;
            n->name = t.text;
            return n;
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.offset);
    }

    ExprNodePtr makeVar(int idx, const std::string& name, std::size_t off) {
        if (idx < 0 || idx >= dim_)
            throw ParseError("variable '" + name + "' exceeds dimension " + std::to_string(dim_),
                             off);
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::Var;
        n->index = idx;
        n->name = name;
        return n;
    }

    void expect(Tok k, const char* what) {
        if (lex_.peek().kind != k) throw ParseError(std::string("expected '") + what + "'",
                                                    lex_.peek().offset);
        lex_.take();
    }

    Lexer lex_;
    int dim_;
    const ParamMap& params_;
    const std::vector<std::string>& var_names_;
};

// ----------------------------------------------------------------- printer

int precedence(const ExprNode& n) {
    switch (n.op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::Pow: return 4;
        case ExprOp::Const: return n.value < 0 ? 3 : 5;  // "-3" reads like a negation
        default: return 5;
    }
}

std::string numberToString(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print(const ExprNode& n, std::string& out);

void printChild(const ExprNode& child, int minPrec, std::string& out) {
    if (precedence(child) < minPrec) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print(const ExprNode& n, std::string& out) {
    switch (n.op) {
        case ExprOp::Const: out += numberToString(n.value); return;
        case ExprOp::Var: out += n.name.empty() ? "x" + std::to_string(n.index + 1) : n.name; return;
        case ExprOp::Param: out += n.name; return;
        case ExprOp::Add:
            printChild(*n.a, 1, out);
            out += " + ";
            printChild(*n.b, 2, out);
            return;
        case ExprOp::Sub:
            printChild(*n.a, 1, out);
            out += " - ";
            printChild(*n.b, 2, out);
            return;
        case ExprOp::Mul:
            printChild(*n.a, 2, out);
            out += "*";
            printChild(*n.b, 3, out);
            return;
        case ExprOp::Div:
            printChild(*n.a, 2, out);
            out += "/";
            printChild(*n.b, 3, out);
            return;
        case ExprOp::Neg:
            out += "-";
            printChild(*n.a, 3, out);
            return;
        case ExprOp::Pow:
            printChild(*n.a, 5, out);
            out += "^";
            printChild(*n.b, 5, out);
            return;
        case ExprOp::Sin: out += "sin("; break;
        case ExprOp::Cos: out += "cos("; break;
        case ExprOp::Tan: out += "tan("; break;
        case ExprOp::Exp: out += "exp("; break;
        case ExprOp::Log: out += "log("; break;
        case ExprOp::Sqrt: out += "sqrt("; break;
    }
    print(*n.a, out);
    out += ')';
}

// --------------------------------------------------------------- evaluator

std::string subexprString(const ExprNode& n) {
    std::string s;
    print(n, s);
    return s;
}

bool integerExponent(const ExprNode& b, long& out) {
    if (b.op != ExprOp::Const) return false;
    const double r = std::round(b.value);
    if (std::abs(b.value - r) > 0.0 || std::abs(r) > 64) return false;
    out = static_cast<long>(r);
    return true;
}

template <class S>
S constant_like(double c, int n);

template <>
double constant_like<double>(double c, int) { return c; }
template <>
Dual1 constant_like<Dual1>(double c, int n) { return Dual1::constant(c, n); }
template <>
Dual2 constant_like<Dual2>(double c, int n) { return Dual2::constant(c, n); }

// Integer powers via repeated multiplication so polynomials stay exactly
// differentiable at 0; real exponents route through exp(log).
template <class S>
S ipow(const S& base, long e, int n) {
    if (e == 0) return constant_like<S>(1.0, n);
    const bool neg = e < 0;
    long m = neg ? -e : e;
    S acc = base;
    S result = constant_like<S>(1.0, n);
    while (m > 0) {
        if (m & 1) result = result * acc;
        m >>= 1;
        if (m) acc = acc * acc;
    }
    if (neg) return constant_like<S>(1.0, n) / result;
    return result;
}

template <class S>
S evalNode(const ExprNode& node, const std::vector<S>& x, const ParamMap& params, int n) {
    using std::sin;  // resolve double primitives alongside the dual overloads
    using std::cos;
    using std::tan;
    using std::exp;
    using std::log;
    using std::sqrt;
    switch (node.op) {
        case ExprOp::Const: return constant_like<S>(node.value, n);
        case ExprOp::Var: return x[static_cast<std::size_t>(node.index)];
        case ExprOp::Param: {
            auto it = params.find(node.name);
            if (it == params.end())
                throw DomainError("unbound parameter", node.name);
            return constant_like<S>(it->second, n);
        }
        case ExprOp::Add: return evalNode(*node.a, x, params, n) + evalNode(*node.b, x, params, n);
        case ExprOp::Sub: return evalNode(*node.a, x, params, n) - evalNode(*node.b, x, params, n);
        case ExprOp::Mul: return evalNode(*node.a, x, params, n) * evalNode(*node.b, x, params, n);
        case ExprOp::Div: {
            S num = evalNode(*node.a, x, params, n);
            S den = evalNode(*node.b, x, params, n);
            if (value_of(den) == 0.0) throw DomainError("division by zero", subexprString(node));
            return num / den;
        }
        case ExprOp::Neg: return -evalNode(*node.a, x, params, n);
        case ExprOp::Pow: {
            S base = evalNode(*node.a, x, params, n);
            long e = 0;
            if (integerExponent(*node.b, e)) {
                if (e < 0 && value_of(base) == 0.0)
                    throw DomainError("zero raised to a negative power", subexprString(node));
                return ipow(base, e, n);
            }
            S expo = evalNode(*node.b, x, params, n);
            if (value_of(base) <= 0.0)
                throw DomainError("non-positive base of a real power", subexprString(node));
            return exp(expo * log(base));
        }
        case ExprOp::Sin: return sin(evalNode(*node.a, x, params, n));
        case ExprOp::Cos: return cos(evalNode(*node.a, x, params, n));
        case ExprOp::Tan: return tan(evalNode(*node.a, x, params, n));
        case ExprOp::Exp: return exp(evalNode(*node.a, x, params, n));
        case ExprOp::Log: {
            S a = evalNode(*node.a, x, params, n);
            if (value_of(a) <= 0.0)
                throw DomainError("log of a non-positive argument", subexprString(node));
            return log(a);
        }
        case ExprOp::Sqrt: {
            S a = evalNode(*node.a, x, params, n);
            if (value_of(a) < 0.0)
                throw DomainError("sqrt of a negative argument", subexprString(node));
            return sqrt(a);
        }
    }
    throw Error("corrupt expression node");
}

bool hasVars(const ExprNode& n) {
    if (n.op == ExprOp::Var) return true;
    if (n.a && hasVars(*n.a)) return true;
    if (n.b && hasVars(*n.b)) return true;
    return false;
}

bool nodesEqual(const ExprNode& a, const ExprNode& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
        case ExprOp::Const: return a.value == b.value;
        case ExprOp::Var: return a.index == b.index;
        case ExprOp::Param: return a.name == b.name;
        default: break;
    }
    if (!!a.a != !!b.a || !!a.b != !!b.b) return false;
    if (a.a && !nodesEqual(*a.a, *b.a)) return false;
    if (a.b && !nodesEqual(*a.b, *b.b)) return false;
    return true;
}

}  // namespace

bool Expression::has_variables() const { return root_ && hasVars(*root_); }

Expression parse(const std::string& text, int dimension, const ParamMap& params,
                 const std::vector<std::string>& var_names) {
    Parser p(text, dimension, params, var_names);
    return Expression(p.run(), dimension);
}

std::string to_string(const Expression& e) {
    if (e.empty()) return "0";
    std::string s;
    print(*e.root(), s);
    return s;
}

bool structurally_equal(const Expression& a, const Expression& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return nodesEqual(*a.root(), *b.root());
}

template <class S>
S eval_generic(const Expression& e, const std::vector<S>& x, const ParamMap& params) {
    if (e.empty()) return constant_like<S>(0.0, e.dim());
    return evalNode<S>(*e.root(), x, params, e.dim());
}

template double eval_generic<double>(const Expression&, const std::vector<double>&,
                                     const ParamMap&);
template Dual1 eval_generic<Dual1>(const Expression&, const std::vector<Dual1>&, const ParamMap&);
template Dual2 eval_generic<Dual2>(const Expression&, const std::vector<Dual2>&, const ParamMap&);

double eval(const Expression& e, const Vec& x, const ParamMap& params) {
    std::vector<double> xs(x.data(), x.data() + x.size());
    return eval_generic<double>(e, xs, params);
}

Dual1 eval_dual1(const Expression& e, const Vec& x, const ParamMap& params) {
    const int n = e.dim();
    std::vector<Dual1> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs.push_back(Dual1::variable(x(i), i, n));
    return eval_generic<Dual1>(e, xs, params);
}

Dual2 eval_dual2(const Expression& e, const Vec& x, const ParamMap& params) {
    const int n = e.dim();
    std::vector<Dual2> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs.push_back(Dual2::variable(x(i), i, n));
    return eval_generic<Dual2>(e, xs, params);
}

Vec gradient(const Expression& e, const Vec& x, const ParamMap& params) {
    if (e.empty()) return Vec::Zero(e.dim());
    return eval_dual1(e, x, params).g;
}

Mat hessian(const Expression& e, const Vec& x, const ParamMap& params) {
    if (e.empty()) return Mat::Zero(e.dim(), e.dim());
    Mat h = eval_dual2(e, x, params).h;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * scale)
        throw DomainError("asymmetric Hessian (non-smooth input)", to_string(e));
    return 0.5 * (h + h.transpose());
}

}  // namespace psmech
