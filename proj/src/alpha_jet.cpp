#include "alphajet/alpha_jet.hpp"

#include "alphajet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alphajet {

AlphaJet::AlphaJet(AlgebraSpec algebra, std::vector<double> base_point, std::vector<double> target_point,
                   std::vector<AlgebraElement> images)
    : algebra_(std::move(algebra)),
      base_point_(std::move(base_point)),
      target_point_(std::move(target_point)),
      images_(std::move(images))
{
    if (images_.empty())
        throw InvalidArgument("an alpha-jet needs a target of dimension >= 1");
    if (images_.size() != target_point_.size())
        throw InvalidArgument("alpha-jet has " + std::to_string(images_.size()) + " images for a target point of dimension " +
                              std::to_string(target_point_.size()));
    for (std::size_t j = 0; j < images_.size(); ++j) {
        if (!(images_[j].spec() == algebra_))
            throw SpecMismatch("alpha-jet image " + std::to_string(j + 1) + " is not in the fibre algebra");
        if (augmentation(images_[j]) != 0.0)
            throw InvalidArgument("alpha-jet image " + std::to_string(j + 1) +
                                  " must lie in the maximal ideal (zero constant term)");
    }
}

AlgebraElement eval(const AlphaJet& u, const SmoothExpr& f)
{
    if (f.arity() > u.target_dim())
        throw ArityMismatch("expression uses y" + std::to_string(f.arity()) + " but the alpha-jet target has dimension " +
                            std::to_string(u.target_dim()));
    AlgebraElement t = taylor(f, u.target_point(), u.algebra().order());
    return substitute(t, u.images(), u.algebra());
}

AlphaJet pushforward(const SmoothMap& phi, const AlphaJet& u)
{
    if (phi.arity() != u.target_dim())
        throw ArityMismatch("pushforward: map arity " + std::to_string(phi.arity()) +
                            " differs from the alpha-jet target dimension " + std::to_string(u.target_dim()));
    std::vector<double> p;
    std::vector<AlgebraElement> images;
    for (const auto& component : phi.components()) {
        AlgebraElement value = eval(u, component);
        p.push_back(augmentation(value));
        images.push_back(maximal_ideal_part(value));
    }
    return AlphaJet(u.algebra(), u.base_point(), std::move(p), std::move(images));
}

AlphaJet lab_morphism_apply(const AlgebraMorphism& kappa, std::vector<double> base_image, const AlphaJet& u)
{
    if (!(kappa.source() == u.algebra()))
        throw SpecMismatch("bundle morphism source differs from the alpha-jet fibre");
    std::vector<AlgebraElement> images;
    images.reserve(u.images().size());
    for (const auto& img : u.images())
        images.push_back(kappa(img));
    return AlphaJet(kappa.target(), std::move(base_image), u.target_point(), std::move(images));
}

AlphaJet chi(const MapJet& j)
{
    std::vector<AlgebraElement> images;
    images.reserve(j.target_dim());
    for (const auto& c : j.components())
        images.push_back(maximal_ideal_part(c));
    return AlphaJet(j.algebra(), j.source_point(), j.target_point(), std::move(images));
}

MapJet chi_inverse(const AlphaJet& u)
{
    const auto& a = u.algebra();
    if (a.has_extra_relations())
        throw AlgebraNotJetType("fibre algebra has extra relations; only R[x_1..x_m]/m^{k+1} fibres come from jets");
    if (a.num_generators() != u.base_point().size())
        throw AlgebraNotJetType("fibre algebra has " + std::to_string(a.num_generators()) +
                                " generators but the base point has dimension " +
                                std::to_string(u.base_point().size()));
    std::vector<AlgebraElement> comps;
    comps.reserve(u.target_dim());
    for (std::size_t j = 0; j < u.target_dim(); ++j)
        comps.push_back(AlgebraElement::constant(a, u.target_point()[j]) + u.images()[j]);
    return MapJet(u.base_point(), a.order(), std::move(comps));
}

double max_abs_difference(const AlphaJet& a, const AlphaJet& b)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!(a.algebra() == b.algebra()) || a.base_point().size() != b.base_point().size() ||
        a.target_dim() != b.target_dim())
        return inf;
    double d = 0.0;
    for (std::size_t i = 0; i < a.base_point().size(); ++i)
        d = std::max(d, std::abs(a.base_point()[i] - b.base_point()[i]));
    for (std::size_t j = 0; j < a.target_dim(); ++j) {
        d = std::max(d, std::abs(a.target_point()[j] - b.target_point()[j]));
        d = std::max(d, max_abs_difference(a.images()[j], b.images()[j]));
    }
    return d;
}

} // namespace alphajet
