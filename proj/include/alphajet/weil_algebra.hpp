#pragma once

// Finite-dimensional local (Weil) algebras R[x_1..x_n]/I where I is a
// monomial ideal containing every monomial of total degree > k.

#include "alphajet/monomial.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace alphajet {

/// Absolute tolerance for coefficient comparisons outside integer mode.
inline constexpr double kDefaultTolerance = 1e-9;

/// Presentation of a Weil algebra: n generators, truncation order k and a set
/// of extra monomial relations. Cheap to copy; the data is immutable and
/// shared.
///
/// The relations are kept as a minimal generating set of the extra part of the
/// ideal (no relation divides another, none is implied by truncation), sorted
/// in graded-lex order. Two specs compare equal iff they present the same
/// ideal.
class AlgebraSpec
{
  public:
    /// Throws InvalidArgument when n == 0, k < 0, a relation has the wrong
    /// length or a relation is the unit monomial. Relations of degree > k are
    /// dropped since truncation already kills them.
    AlgebraSpec(std::size_t num_generators, int order, std::vector<Monomial> relations = {});

    /// R[x_1..x_m]/m^{k+1}: the algebra of k-jets of functions at a point of
    /// an m-dimensional manifold.
    static AlgebraSpec jet_algebra(std::size_t num_generators, int order) { return {num_generators, order}; }

    std::size_t num_generators() const noexcept;
    int order() const noexcept;
    const std::vector<Monomial>& relations() const noexcept;
    bool has_extra_relations() const noexcept { return !relations().empty(); }

    /// Quotient basis in graded-lex order; always starts with the unit.
    const std::vector<Monomial>& basis() const noexcept;
    std::size_t dim() const noexcept { return basis().size(); }
    /// Position of `m` in basis(), or -1 when m lies in the ideal.
    std::ptrdiff_t basis_index(const Monomial& m) const;

    bool in_ideal(const Monomial& m) const;

    /// Generators of the full ideal: the extra relations plus the degree-(k+1)
    /// monomials not already divisible by one of them.
    std::vector<Monomial> ideal_generators() const;

    friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b);

  private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

std::size_t algebra_dim(const AlgebraSpec& spec);

/// Element of a Weil algebra in normal form: only basis monomials are stored
/// and no stored coefficient is zero.
class AlgebraElement
{
  public:
    using Terms = std::map<Monomial, double, GradedLexLess>;

    explicit AlgebraElement(AlgebraSpec spec) : spec_(std::move(spec)) {}
    /// Drops monomials in the ideal and zero coefficients. Throws
    /// InvalidArgument on a monomial of the wrong length.
    AlgebraElement(AlgebraSpec spec, const Terms& terms);

    static AlgebraElement constant(const AlgebraSpec& spec, double c);
    static AlgebraElement one(const AlgebraSpec& spec) { return constant(spec, 1.0); }
    static AlgebraElement generator(const AlgebraSpec& spec, std::size_t index);
    static AlgebraElement from_dense(const AlgebraSpec& spec, std::span<const double> coefficients);

    const AlgebraSpec& spec() const noexcept { return spec_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    double coefficient(const Monomial& m) const;
    /// Coefficients over spec().basis().
    std::vector<double> dense() const;
    double max_abs_coefficient() const;

    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(double s);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
    friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

    /// Structural equality; with normal forms this is equality in the algebra.
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

    std::string to_string() const;

  private:
    void prune();

    AlgebraSpec spec_;
    Terms terms_;
};

/// Constant term: the unique algebra epimorphism onto R.
double augmentation(const AlgebraElement& a);

/// a - augmentation(a)*1.
AlgebraElement maximal_ideal_part(const AlgebraElement& a);

AlgebraElement pow(const AlgebraElement& a, unsigned exponent);

/// Max over monomials of |a_m - b_m|. Throws SpecMismatch.
double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b);

inline bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol = kDefaultTolerance)
{
    return max_abs_difference(a, b) <= tol;
}

/// Evaluates a polynomial (given as an element of any algebra with
/// `values.size()` generators) at `values`, all products taken in `target`.
/// No validity checks; callers guarantee the substitution is well defined on
/// the quotient.
AlgebraElement substitute(const AlgebraElement& polynomial,
                          std::span<const AlgebraElement> values,
                          const AlgebraSpec& target);

/// Unital algebra morphism determined by the images of the generators.
class AlgebraMorphism
{
  public:
    /// Validates: one image per source generator, every image in the target's
    /// maximal ideal, every generator of the source ideal sent to zero (up to
    /// `tol`). Throws SpecMismatch / InvalidMorphism.
    AlgebraMorphism(AlgebraSpec source, AlgebraSpec target, std::vector<AlgebraElement> images,
                    double tol = kDefaultTolerance);

    static AlgebraMorphism identity(const AlgebraSpec& spec);

    const AlgebraSpec& source() const noexcept { return source_; }
    const AlgebraSpec& target() const noexcept { return target_; }
    const std::vector<AlgebraElement>& images() const noexcept { return images_; }

    AlgebraElement operator()(const AlgebraElement& a) const;

    friend bool operator==(const AlgebraMorphism&, const AlgebraMorphism&) = default;

  private:
    AlgebraSpec source_;
    AlgebraSpec target_;
    std::vector<AlgebraElement> images_;
};

/// Throws SpecMismatch when a is not in the source algebra.
AlgebraElement morphism_apply(const AlgebraMorphism& kappa, const AlgebraElement& a);

/// outer ∘ inner.
AlgebraMorphism morphism_compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner);

/// Matrix of the morphism on the quotient bases: column j holds the
/// coefficients of kappa(basis_j) over the target basis.
std::vector<std::vector<double>> morphism_matrix(const AlgebraMorphism& kappa);

/// Bijective endomorphism test: invertible linear part and invertible matrix
/// on the quotient basis (rank decided with relative threshold `tol`).
bool is_automorphism(const AlgebraMorphism& kappa, double tol = kDefaultTolerance);

} // namespace alphajet
