#pragma once

// Closed-form smooth expressions over variables y1..yd. They stand in for
// smooth test functions on a chart and for chart maps.

#include "alphajet/weil_algebra.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alphajet {

class SmoothExpr
{
  public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Sin, Cos, Sqrt };

    /// The constant 0.
    SmoothExpr();

    static SmoothExpr constant(double c);
    /// Zero-based index; prints as y{index+1}.
    static SmoothExpr variable(std::size_t index);

    friend SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b);
    friend SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b);
    friend SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b);
    friend SmoothExpr operator/(const SmoothExpr& a, const SmoothExpr& b);
    friend SmoothExpr operator-(const SmoothExpr& a);
    friend SmoothExpr pow(const SmoothExpr& base, int exponent);
    friend SmoothExpr exp(const SmoothExpr& a);
    friend SmoothExpr log(const SmoothExpr& a);
    friend SmoothExpr sin(const SmoothExpr& a);
    friend SmoothExpr cos(const SmoothExpr& a);
    friend SmoothExpr sqrt(const SmoothExpr& a);

    Op op() const noexcept;
    double value() const;           // Const
    std::size_t var_index() const;  // Var
    int exponent() const;           // Pow
    std::span<const SmoothExpr> args() const noexcept;

    /// 1 + largest variable index used, 0 for a closed expression.
    std::size_t arity() const noexcept;
    bool is_constant() const noexcept { return op() == Op::Const; }
    /// Identity of the shared node; equal for copies of the same subtree.
    const void* node_id() const noexcept { return node_.get(); }

    /// Replaces variable i by replacements[i].
    SmoothExpr substitute(std::span<const SmoothExpr> replacements) const;

    /// Infix text accepted by parse_expr.
    std::string to_string() const;

    /// Same tree shape, ops and constants.
    friend bool operator==(const SmoothExpr& a, const SmoothExpr& b);

  private:
    struct Node;
    explicit SmoothExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static SmoothExpr make(Op op, std::vector<SmoothExpr> args, double value = 0.0, std::size_t index = 0,
                           int exponent = 0);

    std::shared_ptr<const Node> node_;
};

/// Parses the infix grammar: numbers, y / y1..yd, + - * / unary minus,
/// integer powers (`^n`, `^-n`, `^(-n)`), exp log sin cos sqrt.
/// Throws ParseError with the character offset as location.
SmoothExpr parse_expr(std::string_view text);

/// Plain evaluation. Throws DomainError (log/sqrt of a non-positive value,
/// division by zero, non-finite result) and ArityMismatch.
double eval(const SmoothExpr& f, std::span<const double> point);

/// Evaluation over a Weil algebra. Elementary functions are lifted through
/// h(c + v) = sum_{j<=k} h^(j)(c)/j! v^j with v nilpotent; division goes
/// through the geometric-series inverse. All arguments share one algebra.
AlgebraElement eval(const SmoothExpr& f, std::span<const AlgebraElement> args);

/// Degree-<=k Taylor polynomial of f at `point`, as an element of
/// R[x_1..x_d]/m^{k+1} in the shifted variables x_i = y_i - point_i.
AlgebraElement taylor(const SmoothExpr& f, std::span<const double> point, int k);

/// Smooth map R^{d_in} -> R^{d_out} given componentwise.
class SmoothMap
{
  public:
    /// Throws ArityMismatch when a component uses a variable >= arity.
    SmoothMap(std::size_t arity, std::vector<SmoothExpr> components);

    static SmoothMap identity(std::size_t dim);
    static SmoothMap constant(std::size_t arity, std::span<const double> value);

    std::size_t arity() const noexcept { return arity_; }
    std::size_t output_dim() const noexcept { return components_.size(); }
    const std::vector<SmoothExpr>& components() const noexcept { return components_; }
    const SmoothExpr& operator[](std::size_t i) const { return components_[i]; }

    std::vector<double> operator()(std::span<const double> point) const;

    friend bool operator==(const SmoothMap&, const SmoothMap&) = default;

  private:
    std::size_t arity_;
    std::vector<SmoothExpr> components_;
};

/// outer ∘ inner, built by substitution.
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

} // namespace alphajet
