#pragma once

// Seeded generators for the property suites. Everything draws from Rng,
// a std::mt19937_64 seeded with one 64-bit value; integer and real draws are
// derived from the raw 64-bit output by hand so sequences do not depend on
// the standard library's distribution implementations.

#include "alphajet/alpha_jet.hpp"
#include "alphajet/bundle_charts.hpp"
#include "alphajet/map_jet.hpp"
#include "alphajet/smooth_expr.hpp"
#include "alphajet/weil_algebra.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace alphajet {

class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for (seed, label, index); used to give every
    /// property and every case its own reproducible sequence.
    static Rng derive(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [lo, hi], both inclusive.
    long long uniform_int(long long lo, long long hi);
    /// Uniform on [lo, hi) with 53 random bits.
    double uniform_real(double lo, double hi);
    bool coin(double p = 0.5) { return uniform_real(0.0, 1.0) < p; }
    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform_int(0, static_cast<long long>(size) - 1)); }

  private:
    std::mt19937_64 engine_;
};

/// Integer-valued data with small magnitudes (every computation stays exact in
/// double precision) or real-valued data in [-1, 1].
enum class Mode { Exact, Float };

namespace gen {

/// Box from which base and target points are drawn. In exact mode points are
/// integers in [-2, 2].
inline constexpr double kBox = 1.0;

double coefficient(Rng& rng, Mode mode);
std::vector<double> point(Rng& rng, std::size_t dim, Mode mode);

/// 1 <= n <= max_n, min_k <= k <= max_k. Relations (degree >= 2) are added
/// with probability 1/2 when allowed.
AlgebraSpec spec(Rng& rng, std::size_t max_n, int max_k, bool allow_relations, int min_k = 0);
AlgebraElement element(Rng& rng, const AlgebraSpec& spec, Mode mode);
/// Element with zero constant term.
AlgebraElement ideal_element(Rng& rng, const AlgebraSpec& spec, Mode mode);

/// Polynomial in y1..y_arity of total degree <= max_degree.
SmoothExpr polynomial(Rng& rng, std::size_t arity, int max_degree, Mode mode);
SmoothMap polynomial_map(Rng& rng, std::size_t arity, std::size_t output_dim, int max_degree, Mode mode);

/// Bounded smooth expression on [-1, 1]^arity built from sums and products of
/// guarded elementary functions of linear forms (sin, cos, exp(L/2),
/// log(2 + L^2), sqrt(2 + sin L), 1/(2 + cos L), L^2, L^3).
SmoothExpr smooth(Rng& rng, std::size_t arity);

/// Alpha-jet with the given fibre, base dimension and target dimension. The
/// first image always has a non-zero coefficient on the first generator
/// whenever the fibre has one (k >= 1).
AlphaJet alpha_jet(Rng& rng, const AlgebraSpec& algebra, std::size_t base_dim, std::size_t target_dim, Mode mode);
MapJet map_jet(Rng& rng, std::size_t source_dim, std::size_t target_dim, int order, Mode mode);

/// x -> A x + b with A triangular, |diagonal| in {1, 2} (exact) or [0.5, 2].
SmoothMap affine_diffeomorphism(Rng& rng, std::size_t dim, Mode mode);
/// Triangular diffeomorphism y_i = a_i x_i + b_i + c_i sin(x_i) + e_i x_{i-1}^2
/// with 0.1 |a_i| <= |c_i| <= 0.45 |a_i|, so the diagonal of the Jacobian never
/// changes sign.
SmoothMap nonlinear_diffeomorphism(Rng& rng, std::size_t dim);

/// Family whose coefficients are constants.
AutomorphismFamily constant_family(Rng& rng, const AlgebraSpec& algebra, std::size_t base_arity, Mode mode);
/// Smoothly varying family: generator i goes to c_i(x) x_i + (terms in later
/// generators and higher degrees), c_i(x) = exp(L_i(x)/4) > 0. With extra
/// relations only the diagonal scaling is used, since that always preserves a
/// monomial ideal.
AutomorphismFamily smooth_family(Rng& rng, const AlgebraSpec& algebra, std::size_t base_arity);

/// Affine base and fibre maps with a constant family.
ChartTransition linear_transition(Rng& rng, const AlgebraSpec& algebra, std::size_t base_dim, std::size_t fiber_dim,
                                  Mode mode);
ChartTransition nonlinear_transition(Rng& rng, const AlgebraSpec& algebra, std::size_t base_dim,
                                     std::size_t fiber_dim);

} // namespace gen

} // namespace alphajet
