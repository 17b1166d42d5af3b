#pragma once

// Plain integer polynomials, expanded in full with no truncation. This is the
// reference the suites check the jet machinery against: expand f∘phi
// symbolically, shift to the base point and only then truncate.

#include "alphajet/smooth_expr.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace alphajet::oracle {

class IntPoly
{
  public:
    using Exponents = std::vector<int>;

    explicit IntPoly(std::size_t num_vars) : num_vars_(num_vars) {}
    static IntPoly constant(std::size_t num_vars, std::int64_t c);
    static IntPoly variable(std::size_t num_vars, std::size_t index);

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::map<Exponents, std::int64_t>& terms() const noexcept { return terms_; }

    IntPoly& operator+=(const IntPoly& o);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    IntPoly pow(unsigned e) const;

    /// p(values[0], ..., values[n-1]); the values share a variable count.
    IntPoly compose(std::span<const IntPoly> values) const;
    /// p(shift + s) as a polynomial in s.
    IntPoly shifted(std::span<const std::int64_t> shift) const;
    /// Terms of total degree <= k.
    IntPoly truncated(int k) const;

  private:
    std::size_t num_vars_;
    std::map<Exponents, std::int64_t> terms_;
};

/// Integer polynomial of an expression built from integer constants, + - *,
/// unary minus and non-negative integer powers; nullopt for anything else.
std::optional<IntPoly> to_int_poly(const SmoothExpr& f, std::size_t num_vars);

} // namespace alphajet::oracle
