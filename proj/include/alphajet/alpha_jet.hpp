#pragma once

// Alpha-jets: unital algebra morphisms u from smooth functions on a target
// chart into a fibre A_x of a local algebra bundle. For a Weil-type fibre u is
// determined by its target point p and the maximal-ideal images of the
// coordinate functions, u(y_j) = p_j + images[j]; that tuple is what we store.

#include "alphajet/map_jet.hpp"
#include "alphajet/smooth_expr.hpp"
#include "alphajet/weil_algebra.hpp"

#include <span>
#include <vector>

namespace alphajet {

class AlphaJet
{
  public:
    /// Throws InvalidArgument when target_point.size() != images.size(), when
    /// there are no images, or when an image has a non-zero constant term;
    /// SpecMismatch when an image lives outside `algebra`.
    AlphaJet(AlgebraSpec algebra, std::vector<double> base_point, std::vector<double> target_point,
             std::vector<AlgebraElement> images);

    const AlgebraSpec& algebra() const noexcept { return algebra_; }
    const std::vector<double>& base_point() const noexcept { return base_point_; }
    const std::vector<double>& target_point() const noexcept { return target_point_; }
    const std::vector<AlgebraElement>& images() const noexcept { return images_; }
    std::size_t target_dim() const noexcept { return target_point_.size(); }

    friend bool operator==(const AlphaJet&, const AlphaJet&) = default;

  private:
    AlgebraSpec algebra_;
    std::vector<double> base_point_;
    std::vector<double> target_point_;
    std::vector<AlgebraElement> images_;
};

inline const std::vector<double>& source(const AlphaJet& u) { return u.base_point(); }
inline const std::vector<double>& target(const AlphaJet& u) { return u.target_point(); }

/// u(f): the order-k Taylor polynomial of f at target(u) with the shifted
/// coordinate x_j replaced by images[j]. The Taylor remainder lies in
/// m^{k+1}, which the fibre annihilates, so nothing else contributes.
AlgebraElement eval(const AlphaJet& u, const SmoothExpr& f);

/// A(phi)(u) = u ∘ phi^*: target phi(p), images maximal_ideal_part(u(phi_j)).
AlphaJet pushforward(const SmoothMap& phi, const AlphaJet& u);

/// kappa_P(u) = kappa ∘ u over the base map x -> base_image.
AlphaJet lab_morphism_apply(const AlgebraMorphism& kappa, std::vector<double> base_image, const AlphaJet& u);

/// The jet-to-alpha-jet correspondence: g -> j^k(g ∘ phi)(x), valued in the
/// jet algebra R[x_1..x_m]/m^{k+1}.
AlphaJet chi(const MapJet& j);

/// Inverse of chi. Throws AlgebraNotJetType unless the fibre is the full
/// truncation algebra in as many generators as the base dimension.
MapJet chi_inverse(const AlphaJet& u);

/// Largest deviation over base point, target point and image coefficients;
/// +inf when the shapes or algebras differ.
double max_abs_difference(const AlphaJet& a, const AlphaJet& b);

} // namespace alphajet
