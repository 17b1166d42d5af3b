#include "alphajet/map_jet.hpp"

#include "alphajet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alphajet {

MapJet::MapJet(std::vector<double> source_point, int order, std::vector<AlgebraElement> components)
    : source_point_(std::move(source_point)),
      algebra_(AlgebraSpec::jet_algebra(source_point_.size(), order)),
      components_(std::move(components))
{
    if (components_.empty())
        throw InvalidArgument("a map jet needs at least one target component");
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (!(components_[i].spec() == algebra_))
            throw SpecMismatch("jet component " + std::to_string(i + 1) +
                               " is not in the jet algebra of the source point and order");
}

MapJet MapJet::identity(std::vector<double> x, int order)
{
    AlgebraSpec spec = AlgebraSpec::jet_algebra(x.size(), order);
    std::vector<AlgebraElement> comps;
    for (std::size_t i = 0; i < x.size(); ++i)
        comps.push_back(AlgebraElement::constant(spec, x[i]) + AlgebraElement::generator(spec, i));
    return MapJet(std::move(x), order, std::move(comps));
}

std::vector<double> MapJet::target_point() const
{
    std::vector<double> p;
    p.reserve(components_.size());
    for (const auto& c : components_)
        p.push_back(augmentation(c));
    return p;
}

MapJet taylor_map(const SmoothMap& phi, std::span<const double> x, int k)
{
    if (phi.arity() != x.size())
        throw ArityMismatch("map of arity " + std::to_string(phi.arity()) + " expanded at a point of dimension " +
                            std::to_string(x.size()));
    std::vector<AlgebraElement> comps;
    comps.reserve(phi.output_dim());
    for (const auto& c : phi.components())
        comps.push_back(taylor(c, x, k));
    return MapJet(std::vector<double>(x.begin(), x.end()), k, std::move(comps));
}

bool jets_equivalent(const SmoothMap& phi, const SmoothMap& psi, std::span<const double> x, int k, double tol)
{
    if (phi.arity() != psi.arity() || phi.output_dim() != psi.output_dim())
        throw ArityMismatch("jets_equivalent: maps have different shapes");
    MapJet a = taylor_map(phi, x, k);
    MapJet b = taylor_map(psi, x, k);
    for (std::size_t i = 0; i < a.target_dim(); ++i)
        if (!approx_equal(a.components()[i], b.components()[i], tol))
            return false;
    return true;
}

MapJet jet_compose(const MapJet& outer, const MapJet& inner, double tol)
{
    if (outer.order() != inner.order())
        throw InvalidArgument("jet_compose: orders differ (" + std::to_string(outer.order()) + " vs " +
                              std::to_string(inner.order()) + ")");
    if (outer.source_dim() != inner.target_dim())
        throw ArityMismatch("jet_compose: outer source dimension differs from inner target dimension");
    auto q = inner.target_point();
    for (std::size_t i = 0; i < q.size(); ++i)
        if (std::abs(q[i] - outer.source_point()[i]) > tol)
            throw InvalidArgument("jet_compose: outer jet is not based at the inner jet's target point");

    // shifted outer variable s_i becomes the maximal-ideal part of inner component i
    std::vector<AlgebraElement> shifts;
    shifts.reserve(inner.target_dim());
    for (const auto& c : inner.components())
        shifts.push_back(maximal_ideal_part(c));
    std::vector<AlgebraElement> comps;
    comps.reserve(outer.target_dim());
    for (const auto& c : outer.components())
        comps.push_back(substitute(c, shifts, inner.algebra()));
    return MapJet(inner.source_point(), inner.order(), std::move(comps));
}

double max_abs_difference(const MapJet& a, const MapJet& b)
{
    if (!(a.algebra() == b.algebra()) || a.target_dim() != b.target_dim())
        return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.source_dim(); ++i)
        d = std::max(d, std::abs(a.source_point()[i] - b.source_point()[i]));
    for (std::size_t i = 0; i < a.target_dim(); ++i)
        d = std::max(d, max_abs_difference(a.components()[i], b.components()[i]));
    return d;
}

} // namespace alphajet
