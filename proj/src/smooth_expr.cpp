#include "alphajet/smooth_expr.hpp"

#include "alphajet/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>

namespace alphajet {

struct SmoothExpr::Node
{
    Op op;
    std::vector<SmoothExpr> args;
    double value = 0.0;
    std::size_t index = 0;
    int exponent = 0;
    std::size_t arity = 0;
};

SmoothExpr::SmoothExpr() : SmoothExpr(constant(0.0)) {}

SmoothExpr SmoothExpr::make(Op op, std::vector<SmoothExpr> args, double value, std::size_t index, int exponent)
{
    auto node = std::make_shared<Node>();
    node->op = op;
    node->value = value;
    node->index = index;
    node->exponent = exponent;
    node->arity = op == Op::Var ? index + 1 : 0;
    for (const auto& a : args)
        node->arity = std::max(node->arity, a.arity());
    node->args = std::move(args);
    return SmoothExpr(std::move(node));
}

SmoothExpr SmoothExpr::constant(double c)
{
    if (!std::isfinite(c))
        throw InvalidArgument("expression constants must be finite");
    return make(Op::Const, {}, c);
}

SmoothExpr SmoothExpr::variable(std::size_t index) { return make(Op::Var, {}, 0.0, index); }

SmoothExpr::Op SmoothExpr::op() const noexcept { return node_->op; }
std::span<const SmoothExpr> SmoothExpr::args() const noexcept { return node_->args; }
std::size_t SmoothExpr::arity() const noexcept { return node_->arity; }

double SmoothExpr::value() const
{
    if (op() != Op::Const)
        throw InvalidArgument("value() on a non-constant expression");
    return node_->value;
}

std::size_t SmoothExpr::var_index() const
{
    if (op() != Op::Var)
        throw InvalidArgument("var_index() on a non-variable expression");
    return node_->index;
}

int SmoothExpr::exponent() const
{
    if (op() != Op::Pow)
        throw InvalidArgument("exponent() on a non-power expression");
    return node_->exponent;
}

namespace {

bool is_const(const SmoothExpr& e, double v) { return e.is_constant() && e.value() == v; }

} // namespace

// Light constant folding only: literal arithmetic and the additive/multiplicative
// units. Nothing that could hide a domain error is folded.
SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b)
{
    if (a.is_constant() && b.is_constant())
        return SmoothExpr::constant(a.value() + b.value());
    if (is_const(a, 0.0))
        return b;
    if (is_const(b, 0.0))
        return a;
    return SmoothExpr::make(SmoothExpr::Op::Add, {a, b});
}

SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b)
{
    if (a.is_constant() && b.is_constant())
        return SmoothExpr::constant(a.value() - b.value());
    if (is_const(b, 0.0))
        return a;
    return SmoothExpr::make(SmoothExpr::Op::Sub, {a, b});
}

SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b)
{
    if (a.is_constant() && b.is_constant())
        return SmoothExpr::constant(a.value() * b.value());
    if (is_const(a, 1.0))
        return b;
    if (is_const(b, 1.0))
        return a;
    return SmoothExpr::make(SmoothExpr::Op::Mul, {a, b});
}

SmoothExpr operator/(const SmoothExpr& a, const SmoothExpr& b)
{
    if (is_const(b, 1.0))
        return a;
    return SmoothExpr::make(SmoothExpr::Op::Div, {a, b});
}

SmoothExpr operator-(const SmoothExpr& a)
{
    if (a.is_constant())
        return SmoothExpr::constant(-a.value());
    return SmoothExpr::make(SmoothExpr::Op::Neg, {a});
}

SmoothExpr pow(const SmoothExpr& base, int exponent)
{
    if (exponent == 1)
        return base;
    return SmoothExpr::make(SmoothExpr::Op::Pow, {base}, 0.0, 0, exponent);
}

SmoothExpr exp(const SmoothExpr& a) { return SmoothExpr::make(SmoothExpr::Op::Exp, {a}); }
SmoothExpr log(const SmoothExpr& a) { return SmoothExpr::make(SmoothExpr::Op::Log, {a}); }
SmoothExpr sin(const SmoothExpr& a) { return SmoothExpr::make(SmoothExpr::Op::Sin, {a}); }
SmoothExpr cos(const SmoothExpr& a) { return SmoothExpr::make(SmoothExpr::Op::Cos, {a}); }
SmoothExpr sqrt(const SmoothExpr& a) { return SmoothExpr::make(SmoothExpr::Op::Sqrt, {a}); }

namespace {

SmoothExpr rebuild(const SmoothExpr& e, std::vector<SmoothExpr> args)
{
    using Op = SmoothExpr::Op;
    switch (e.op()) {
    case Op::Add: return args[0] + args[1];
    case Op::Sub: return args[0] - args[1];
    case Op::Mul: return args[0] * args[1];
    case Op::Div: return args[0] / args[1];
    case Op::Neg: return -args[0];
    case Op::Pow: return pow(args[0], e.exponent());
    case Op::Exp: return exp(args[0]);
    case Op::Log: return log(args[0]);
    case Op::Sin: return sin(args[0]);
    case Op::Cos: return cos(args[0]);
    case Op::Sqrt: return sqrt(args[0]);
    case Op::Const:
    case Op::Var: break;
    }
    return e;
}

SmoothExpr substitute_impl(const SmoothExpr& e, std::span<const SmoothExpr> repl,
                           std::unordered_map<const void*, SmoothExpr>& memo)
{
    const void* key = e.node_id();
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    SmoothExpr out;
    if (e.op() == SmoothExpr::Op::Var) {
        if (e.var_index() >= repl.size())
            throw ArityMismatch("substitution does not cover variable y" + std::to_string(e.var_index() + 1));
        out = repl[e.var_index()];
    } else if (e.op() == SmoothExpr::Op::Const) {
        out = e;
    } else {
        std::vector<SmoothExpr> args;
        for (const auto& a : e.args())
            args.push_back(substitute_impl(a, repl, memo));
        out = rebuild(e, std::move(args));
    }
    memo.emplace(key, out);
    return out;
}

} // namespace

SmoothExpr SmoothExpr::substitute(std::span<const SmoothExpr> replacements) const
{
    std::unordered_map<const void*, SmoothExpr> memo;
    return substitute_impl(*this, replacements, memo);
}

bool operator==(const SmoothExpr& a, const SmoothExpr& b)
{
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.op != y.op || x.value != y.value || x.index != y.index || x.exponent != y.exponent ||
        x.args.size() != y.args.size())
        return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!(x.args[i] == y.args[i]))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int precedence(const SmoothExpr& e)
{
    using Op = SmoothExpr::Op;
    switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Const: return e.value() < 0 || std::signbit(e.value()) ? 0 : 5;
    default: return 5;
    }
}

std::string format_number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print(const SmoothExpr& e, std::string& out);

void print_wrapped(const SmoothExpr& e, bool wrap, std::string& out)
{
    if (wrap)
        out += '(';
    print(e, out);
    if (wrap)
        out += ')';
}

const char* function_name(SmoothExpr::Op op)
{
    using Op = SmoothExpr::Op;
    switch (op) {
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    default: return "";
    }
}

void print(const SmoothExpr& e, std::string& out)
{
    using Op = SmoothExpr::Op;
    const int p = precedence(e);
    switch (e.op()) {
    case Op::Const: out += format_number(e.value()); return;
    case Op::Var: out += "y" + std::to_string(e.var_index() + 1); return;
    case Op::Add:
        print_wrapped(e.args()[0], precedence(e.args()[0]) < p, out);
        out += " + ";
        print_wrapped(e.args()[1], precedence(e.args()[1]) < p, out);
        return;
    case Op::Sub:
        print_wrapped(e.args()[0], precedence(e.args()[0]) < p, out);
        out += " - ";
        print_wrapped(e.args()[1], precedence(e.args()[1]) <= p, out);
        return;
    case Op::Mul:
        print_wrapped(e.args()[0], precedence(e.args()[0]) < p, out);
        out += "*";
        print_wrapped(e.args()[1], precedence(e.args()[1]) < p, out);
        return;
    case Op::Div:
        print_wrapped(e.args()[0], precedence(e.args()[0]) < p, out);
        out += "/";
        print_wrapped(e.args()[1], precedence(e.args()[1]) <= p, out);
        return;
    case Op::Neg:
        out += "-";
        print_wrapped(e.args()[0], precedence(e.args()[0]) <= p, out);
        return;
    case Op::Pow:
        print_wrapped(e.args()[0], precedence(e.args()[0]) <= p, out);
        out += "^";
        if (e.exponent() < 0)
            out += "(" + std::to_string(e.exponent()) + ")";
        else
            out += std::to_string(e.exponent());
        return;
    default:
        out += function_name(e.op());
        out += "(";
        print(e.args()[0], out);
        out += ")";
        return;
    }
}

} // namespace

std::string SmoothExpr::to_string() const
{
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class Parser
{
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    SmoothExpr parse()
    {
        SmoothExpr e = expression();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg, "column " + std::to_string(pos_ + 1));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n'))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    SmoothExpr expression()
    {
        SmoothExpr e = term();
        for (;;) {
            if (accept('+'))
                e = e + term();
            else if (accept('-'))
                e = e - term();
            else
                return e;
        }
    }

    SmoothExpr term()
    {
        SmoothExpr e = unary();
        for (;;) {
            if (accept('*'))
                e = e * unary();
            else if (accept('/'))
                e = e / unary();
            else
                return e;
        }
    }

    SmoothExpr unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    SmoothExpr power()
    {
        SmoothExpr base = primary();
        if (accept('^')) {
            bool paren = accept('(');
            bool negative = accept('-');
            int n = integer();
            if (paren)
                expect(')');
            return pow(base, negative ? -n : n);
        }
        return base;
    }

    int integer()
    {
        skip_space();
        int value = 0;
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (res.ec != std::errc{} || res.ptr == text_.data() + pos_)
            fail("expected an integer exponent");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return value;
    }

    SmoothExpr primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            SmoothExpr e = expression();
            expect(')');
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            double v = 0.0;
            auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
            if (res.ec != std::errc{})
                fail("malformed number");
            pos_ = static_cast<std::size_t>(res.ptr - text_.data());
            return SmoothExpr::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string_view word = text_.substr(start, pos_ - start);
            return identifier(word, start);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    SmoothExpr identifier(std::string_view word, std::size_t start)
    {
        if (word == "y")
            return SmoothExpr::variable(0);
        if (word.size() > 1 && word[0] == 'y' &&
            std::all_of(word.begin() + 1, word.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            std::size_t idx = 0;
            std::from_chars(word.data() + 1, word.data() + word.size(), idx);
            if (idx == 0) {
                pos_ = start;
                fail("variables are numbered from y1");
            }
            return SmoothExpr::variable(idx - 1);
        }
        SmoothExpr (*fn)(const SmoothExpr&) = nullptr;
        if (word == "exp")
            fn = [](const SmoothExpr& a) { return exp(a); };
        else if (word == "log")
            fn = [](const SmoothExpr& a) { return log(a); };
        else if (word == "sin")
            fn = [](const SmoothExpr& a) { return sin(a); };
        else if (word == "cos")
            fn = [](const SmoothExpr& a) { return cos(a); };
        else if (word == "sqrt")
            fn = [](const SmoothExpr& a) { return sqrt(a); };
        if (fn == nullptr) {
            pos_ = start;
            fail("unknown identifier '" + std::string(word) + "'");
        }
        expect('(');
        SmoothExpr arg = expression();
        expect(')');
        return fn(arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

SmoothExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double checked(double v, const char* what)
{
    if (!std::isfinite(v))
        throw DomainError(std::string(what) + " produced a non-finite value");
    return v;
}

// Same squaring sequence as pow(AlgebraElement, unsigned) so constant terms
// agree bit for bit.
double int_pow(double base, unsigned n)
{
    double result = 1.0;
    while (n > 0) {
        if (n & 1u)
            result = result * base;
        n >>= 1;
        if (n > 0)
            base = base * base;
    }
    return result;
}

double eval_impl(const SmoothExpr& e, std::span<const double> point, std::unordered_map<const void*, double>& memo)
{
    const void* key = e.node_id();
    using Op = SmoothExpr::Op;
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    auto arg = [&](std::size_t i) { return eval_impl(e.args()[i], point, memo); };
    double v = 0.0;
    switch (e.op()) {
    case Op::Const: v = e.value(); break;
    case Op::Var: v = point[e.var_index()]; break;
    case Op::Add: v = arg(0) + arg(1); break;
    case Op::Sub: v = arg(0) - arg(1); break;
    case Op::Mul: v = arg(0) * arg(1); break;
    case Op::Div: {
        double num = arg(0);
        double den = arg(1);
        if (den == 0.0)
            throw DomainError("division by zero");
        v = num / den;
        break;
    }
    case Op::Neg: v = -arg(0); break;
    case Op::Pow: {
        double b = arg(0);
        int n = e.exponent();
        if (n >= 0) {
            v = int_pow(b, static_cast<unsigned>(n));
        } else {
            double d = int_pow(b, static_cast<unsigned>(-n));
            if (d == 0.0)
                throw DomainError("negative power of zero");
            v = 1.0 / d;
        }
        break;
    }
    case Op::Exp: v = std::exp(arg(0)); break;
    case Op::Log: {
        double a = arg(0);
        if (!(a > 0.0))
            throw DomainError("log of a non-positive value");
        v = std::log(a);
        break;
    }
    case Op::Sin: v = std::sin(arg(0)); break;
    case Op::Cos: v = std::cos(arg(0)); break;
    case Op::Sqrt: {
        double a = arg(0);
        if (!(a > 0.0))
            throw DomainError("sqrt of a non-positive value");
        v = std::sqrt(a);
        break;
    }
    }
    checked(v, "evaluation");
    memo.emplace(key, v);
    return v;
}

// sum_j coeffs[j] * nil^j by Horner; nil is nilpotent.
AlgebraElement horner(std::span<const double> coeffs, const AlgebraElement& nil)
{
    AlgebraElement r = AlgebraElement::constant(nil.spec(), coeffs.back());
    for (std::size_t j = coeffs.size() - 1; j-- > 0;)
        r = r * nil + AlgebraElement::constant(nil.spec(), coeffs[j]);
    return r;
}

AlgebraElement lift(const AlgebraElement& a, SmoothExpr::Op op)
{
    using Op = SmoothExpr::Op;
    const int k = a.spec().order();
    const double c = augmentation(a);
    const AlgebraElement nil = maximal_ideal_part(a);
    std::vector<double> coeffs(static_cast<std::size_t>(k) + 1);

    double factorial = 1.0;
    switch (op) {
    case Op::Exp: {
        double e = std::exp(c);
        for (int j = 0; j <= k; ++j) {
            if (j > 0)
                factorial *= j;
            coeffs[j] = j == 0 ? e : e / factorial;
        }
        break;
    }
    case Op::Log: {
        if (!(c > 0.0))
            throw DomainError("log of a non-positive value");
        coeffs[0] = std::log(c);
        double cp = 1.0;
        for (int j = 1; j <= k; ++j) {
            cp *= c;
            coeffs[j] = (j % 2 == 1 ? 1.0 : -1.0) / (j * cp);
        }
        break;
    }
    case Op::Sin:
    case Op::Cos: {
        const double s = std::sin(c);
        const double co = std::cos(c);
        // derivative cycle of sin: sin, cos, -sin, -cos
        const double cycle_sin[4] = {s, co, -s, -co};
        const double cycle_cos[4] = {co, -s, -co, s};
        const double* cycle = op == Op::Sin ? cycle_sin : cycle_cos;
        for (int j = 0; j <= k; ++j) {
            if (j > 0)
                factorial *= j;
            coeffs[j] = j == 0 ? cycle[0] : cycle[j % 4] / factorial;
        }
        break;
    }
    case Op::Sqrt: {
        if (!(c > 0.0))
            throw DomainError("sqrt of a non-positive value");
        const double root = std::sqrt(c);
        coeffs[0] = root;
        double binom = 1.0; // binomial(1/2, j)
        double cp = 1.0;
        for (int j = 1; j <= k; ++j) {
            binom *= (0.5 - (j - 1)) / j;
            cp *= c;
            coeffs[j] = root * binom / cp;
        }
        break;
    }
    default: throw InvalidArgument("not an elementary function");
    }
    AlgebraElement r = horner(coeffs, nil);
    if (!std::isfinite(r.max_abs_coefficient()))
        throw DomainError("lifted function produced a non-finite value");
    return r;
}

// 1/(c + v) = sum_j (-1)^j v^j / c^{j+1}
AlgebraElement inverse(const AlgebraElement& a)
{
    const double c = augmentation(a);
    if (c == 0.0)
        throw DomainError("division by zero");
    const int k = a.spec().order();
    std::vector<double> coeffs(static_cast<std::size_t>(k) + 1);
    coeffs[0] = 1.0 / c;
    for (int j = 1; j <= k; ++j)
        coeffs[j] = -coeffs[j - 1] / c;
    AlgebraElement r = horner(coeffs, maximal_ideal_part(a));
    if (!std::isfinite(r.max_abs_coefficient()))
        throw DomainError("inverse produced a non-finite value");
    return r;
}

AlgebraElement eval_impl(const SmoothExpr& e, std::span<const AlgebraElement> args, const AlgebraSpec& spec,
                         std::unordered_map<const void*, AlgebraElement>& memo)
{
    const void* key = e.node_id();
    using Op = SmoothExpr::Op;
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    auto arg = [&](std::size_t i) { return eval_impl(e.args()[i], args, spec, memo); };
    AlgebraElement v(spec);
    switch (e.op()) {
    case Op::Const: v = AlgebraElement::constant(spec, e.value()); break;
    case Op::Var: v = args[e.var_index()]; break;
    case Op::Add: v = arg(0) + arg(1); break;
    case Op::Sub: v = arg(0) - arg(1); break;
    case Op::Mul: v = arg(0) * arg(1); break;
    case Op::Div: {
        AlgebraElement num = arg(0);
        AlgebraElement den = arg(1);
        const double b0 = augmentation(den);
        if (b0 == 0.0)
            throw DomainError("division by zero");
        // constant term is exactly num0/den0; the residual's constant part is
        // zero in exact arithmetic and is dropped
        const double q = augmentation(num) / b0;
        AlgebraElement residual = maximal_ideal_part(num - q * den);
        v = AlgebraElement::constant(spec, q) + residual * inverse(den);
        break;
    }
    case Op::Neg: v = -arg(0); break;
    case Op::Pow: {
        AlgebraElement b = arg(0);
        int n = e.exponent();
        if (n >= 0) {
            v = pow(b, static_cast<unsigned>(n));
        } else {
            AlgebraElement d = pow(b, static_cast<unsigned>(-n));
            if (augmentation(d) == 0.0)
                throw DomainError("negative power of zero");
            v = inverse(d);
        }
        break;
    }
    default: v = lift(arg(0), e.op()); break;
    }
    if (!std::isfinite(v.max_abs_coefficient()))
        throw DomainError("evaluation produced a non-finite value");
    memo.emplace(key, v);
    return v;
}

} // namespace

double eval(const SmoothExpr& f, std::span<const double> point)
{
    if (f.arity() > point.size())
        throw ArityMismatch("expression uses y" + std::to_string(f.arity()) + " but the point has dimension " +
                            std::to_string(point.size()));
    std::unordered_map<const void*, double> memo;
    return eval_impl(f, point, memo);
}

AlgebraElement eval(const SmoothExpr& f, std::span<const AlgebraElement> args)
{
    if (f.arity() > args.size())
        throw ArityMismatch("expression uses y" + std::to_string(f.arity()) + " but only " +
                            std::to_string(args.size()) + " arguments were given");
    if (args.empty())
        throw InvalidArgument("algebra-valued evaluation needs at least one argument to fix the algebra");
    const AlgebraSpec& spec = args[0].spec();
    for (const auto& a : args)
        if (!(a.spec() == spec))
            throw SpecMismatch("evaluation arguments live in different algebras");
    std::unordered_map<const void*, AlgebraElement> memo;
    return eval_impl(f, args, spec, memo);
}

AlgebraElement taylor(const SmoothExpr& f, std::span<const double> point, int k)
{
    if (point.empty())
        throw ArityMismatch("taylor expansion needs a point of dimension >= 1");
    AlgebraSpec spec = AlgebraSpec::jet_algebra(point.size(), k);
    std::vector<AlgebraElement> args;
    args.reserve(point.size());
    for (std::size_t i = 0; i < point.size(); ++i)
        args.push_back(AlgebraElement::constant(spec, point[i]) + AlgebraElement::generator(spec, i));
    return eval(f, args);
}

// ---------------------------------------------------------------------------
// SmoothMap
// ---------------------------------------------------------------------------

SmoothMap::SmoothMap(std::size_t arity, std::vector<SmoothExpr> components)
    : arity_(arity), components_(std::move(components))
{
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (components_[i].arity() > arity_)
            throw ArityMismatch("component " + std::to_string(i + 1) + " uses y" +
                                std::to_string(components_[i].arity()) + " but the map has arity " +
                                std::to_string(arity_));
}

SmoothMap SmoothMap::identity(std::size_t dim)
{
    std::vector<SmoothExpr> c;
    for (std::size_t i = 0; i < dim; ++i)
        c.push_back(SmoothExpr::variable(i));
    return SmoothMap(dim, std::move(c));
}

SmoothMap SmoothMap::constant(std::size_t arity, std::span<const double> value)
{
    std::vector<SmoothExpr> c;
    for (double v : value)
        c.push_back(SmoothExpr::constant(v));
    return SmoothMap(arity, std::move(c));
}

std::vector<double> SmoothMap::operator()(std::span<const double> point) const
{
    if (point.size() != arity_)
        throw ArityMismatch("map of arity " + std::to_string(arity_) + " evaluated at a point of dimension " +
                            std::to_string(point.size()));
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto& c : components_)
        out.push_back(eval(c, point));
    return out;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner)
{
    if (outer.arity() != inner.output_dim())
        throw ArityMismatch("compose: outer arity " + std::to_string(outer.arity()) + " differs from inner output " +
                            std::to_string(inner.output_dim()));
    std::vector<SmoothExpr> c;
    for (const auto& comp : outer.components())
        c.push_back(comp.substitute(inner.components()));
    return SmoothMap(inner.arity(), std::move(c));
}

} // namespace alphajet
