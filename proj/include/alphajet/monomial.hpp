#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace alphajet {

/// Exponent tuple x_1^{e_1} ... x_n^{e_n}. The total degree is cached.
class Monomial
{
  public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents);

    static Monomial one(std::size_t num_vars) { return Monomial(std::vector<int>(num_vars, 0)); }
    static Monomial generator(std::size_t num_vars, std::size_t index);

    std::size_t num_vars() const noexcept { return exponents_.size(); }
    int degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }
    int operator[](std::size_t i) const { return exponents_[i]; }
    std::span<const int> exponents() const noexcept { return exponents_; }

    /// True iff every exponent of *this is <= the matching exponent of `other`.
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) = default;

    std::string to_string() const;

  private:
    std::vector<int> exponents_;
    int degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger exponent on an earlier variable first (1, x, y, x^2, xy, y^2, ...).
struct GradedLexLess
{
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Every monomial in `num_vars` variables of total degree <= max_degree,
/// in graded-lex order.
std::vector<Monomial> monomials_up_to(std::size_t num_vars, int max_degree);

/// Monomials of exactly the given total degree, graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, int degree);

} // namespace alphajet
