#pragma once

#include "alphajet/smooth_expr.hpp"
#include "alphajet/weil_algebra.hpp"

#include <span>
#include <vector>

namespace alphajet {

/// k-jet of a map R^m -> R^d at a source point x, stored as the order-k
/// Taylor polynomial of each target coordinate in R[x_1..x_m]/m^{k+1}
/// (shifted variables centred at x). Constant terms form the target point.
class MapJet
{
  public:
    /// Throws InvalidArgument / SpecMismatch when a component is not in the
    /// jet algebra of (source_point.size(), order).
    MapJet(std::vector<double> source_point, int order, std::vector<AlgebraElement> components);

    /// Jet of the identity map at x.
    static MapJet identity(std::vector<double> x, int order);

    const std::vector<double>& source_point() const noexcept { return source_point_; }
    int order() const noexcept { return algebra_.order(); }
    const AlgebraSpec& algebra() const noexcept { return algebra_; }
    const std::vector<AlgebraElement>& components() const noexcept { return components_; }
    std::size_t source_dim() const noexcept { return source_point_.size(); }
    std::size_t target_dim() const noexcept { return components_.size(); }

    std::vector<double> target_point() const;

    friend bool operator==(const MapJet&, const MapJet&) = default;

  private:
    std::vector<double> source_point_;
    AlgebraSpec algebra_;
    std::vector<AlgebraElement> components_;
};

/// j^k phi(x), componentwise taylor().
MapJet taylor_map(const SmoothMap& phi, std::span<const double> x, int k);

/// Same order-k Taylor data at x, coefficientwise within `tol`.
/// Throws ArityMismatch when the maps have different shapes.
bool jets_equivalent(const SmoothMap& phi, const SmoothMap& psi, std::span<const double> x, int k,
                     double tol = kDefaultTolerance);

/// Truncated substitution: the jet of (outer-representative ∘ inner-representative).
/// Needs outer.source_point() == inner.target_point() (within `tol`), matching
/// dimensions and equal orders.
MapJet jet_compose(const MapJet& outer, const MapJet& inner, double tol = kDefaultTolerance);

/// Largest deviation between source points and component coefficients;
/// +inf when the shapes differ.
double max_abs_difference(const MapJet& a, const MapJet& b);

} // namespace alphajet
