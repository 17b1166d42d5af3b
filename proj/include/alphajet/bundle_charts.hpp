#pragma once

// Chart transitions of the double bundle of alpha-jets. A transition is given
// by a base chart change, a target chart change, and a smooth family of fibre
// automorphisms parametrised by the (old) base coordinates.

#include "alphajet/alpha_jet.hpp"
#include "alphajet/smooth_expr.hpp"
#include "alphajet/weil_algebra.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace alphajet {

/// x -> Xi^x, an automorphism of the fibre algebra for every base point x.
/// Each generator image is a list of (monomial, coefficient expression in
/// the base coordinates y1..ym).
class AutomorphismFamily
{
  public:
    struct Term
    {
        Monomial monomial;
        SmoothExpr coefficient;
    };
    using GeneratorImage = std::vector<Term>;

    /// Rejects coefficients that reference coordinates beyond the base
    /// (ArityMismatch) and terms outside the maximal ideal (InvalidArgument).
    /// Terms whose monomial lies in the ideal are dropped; repeated monomials
    /// are summed.
    AutomorphismFamily(AlgebraSpec algebra, std::size_t base_arity, std::vector<GeneratorImage> images);

    static AutomorphismFamily identity(const AlgebraSpec& algebra, std::size_t base_arity);
    /// Family that is the same morphism at every base point.
    static AutomorphismFamily constant(const AlgebraMorphism& kappa, std::size_t base_arity);

    const AlgebraSpec& algebra() const noexcept { return algebra_; }
    std::size_t base_arity() const noexcept { return base_arity_; }
    const std::vector<GeneratorImage>& generator_images() const noexcept { return images_; }

  private:
    AlgebraSpec algebra_;
    std::size_t base_arity_;
    std::vector<GeneratorImage> images_;
};

/// Instantiates the family at a base point. Throws DomainError when a
/// coefficient cannot be evaluated and NotAutomorphism when the result is not
/// a valid automorphism.
AlgebraMorphism family_at(const AutomorphismFamily& family, std::span<const double> base_point);

/// Applies Xi^{base_point} to every image of u. Base and target points are
/// left as they are.
AlphaJet family_action(const AutomorphismFamily& family, std::span<const double> base_point, const AlphaJet& u);

struct ChartTransition
{
    /// Throws ArityMismatch unless base_map is m -> m with m the family's base
    /// arity and fiber_map is d -> d.
    ChartTransition(SmoothMap base_map, SmoothMap fiber_map, AutomorphismFamily family);

    static ChartTransition identity(const AlgebraSpec& algebra, std::size_t base_dim, std::size_t fiber_dim);

    SmoothMap base_map;
    SmoothMap fiber_map;
    AutomorphismFamily family;
};

/// (x, u) -> (base_map(x), Xi^x ∘ u ∘ fiber_map^*).
AlphaJet transition_apply(const ChartTransition& t, const AlphaJet& u);

/// The transition equal to applying `first` and then `second`, built
/// symbolically (base and fibre maps composed by substitution, families
/// multiplied as x -> Xi_second^{first.base_map(x)} ∘ Xi_first^x).
ChartTransition transition_compose(const ChartTransition& second, const ChartTransition& first);

struct CheckReport
{
    bool pass = true;
    double max_abs_deviation = 0.0;
    std::optional<std::size_t> failing_sample;
    /// Which sub-check failed first, e.g. "projections" or "representation".
    std::string failing_check;
};

/// T32 ∘ T21 == T31 on every sample, within `tol`.
CheckReport cocycle_check(const ChartTransition& t21, const ChartTransition& t32, const ChartTransition& t31,
                          std::span<const AlphaJet> samples, double tol = 1e-6);

using ChartMap = std::function<AlphaJet(const AlphaJet&)>;

/// Checks that a chart map of alpha-jets commutes with the two projections:
/// source(chart(u)) == base_map(source(u)) and target(chart(u)) ==
/// fiber_map(target(u)) ("projections"), and that source/target of both u and
/// chart(u) are read off the stored representation, i.e. u(y_j) = p_j + images[j]
/// ("representation").
CheckReport double_trivialization_check(const ChartMap& chart, const SmoothMap& base_map, const SmoothMap& fiber_map,
                                        std::span<const AlphaJet> samples, double tol = kDefaultTolerance);

CheckReport double_trivialization_check(const ChartTransition& t, std::span<const AlphaJet> samples,
                                        double tol = kDefaultTolerance);

/// Forward difference quotients of transition_apply with respect to the base
/// point along `direction`. For a smooth transition successive quotient
/// changes shrink like the step, so each ratio should be close to the step
/// ratio (10 for the default steps).
struct SmoothnessProbe
{
    std::vector<double> steps;
    std::vector<double> quotient_changes;  // |D(h_i) - D(h_{i+1})|_inf
    std::vector<double> ratios;            // quotient_changes[i] / quotient_changes[i+1]
    bool affine = false;                   // quotient changes at round-off level
    bool pass = false;
};

SmoothnessProbe smoothness_probe(const ChartTransition& t, const AlphaJet& u, std::span<const double> direction,
                                 std::vector<double> steps = {1e-2, 1e-3, 1e-4});

/// Damped Newton solve of f(z) = y starting at `guess`. The Jacobian comes
/// from order-1 jets of f. Returns nullopt when the residual does not drop
/// below `tol` within `max_iterations`.
std::optional<std::vector<double>> newton_inverse(const SmoothMap& f, std::span<const double> y,
                                                  std::span<const double> guess, double tol = 1e-10,
                                                  int max_iterations = 50);

/// Round trip x -> f(x) -> newton_inverse -> x at every sample point (Newton
/// starts from f(x)); fails when a round trip misses by more than `tol`.
CheckReport diffeomorphism_check(const SmoothMap& f, std::span<const std::vector<double>> points, double tol = 1e-6);

/// Flattened coordinates (base point, target point, dense image coefficients).
std::vector<double> chart_coordinates(const AlphaJet& u);

} // namespace alphajet
