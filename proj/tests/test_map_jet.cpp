#include "alphajet/error.hpp"
#include "alphajet/map_jet.hpp"

#include "support/oracle.hpp"
#include "support/properties.hpp"

#include <doctest.h>

using namespace alphajet;

namespace {

SmoothMap map1(const char* f)
{
    return SmoothMap(1, {parse_expr(f)});
}

} // namespace

TEST_CASE("taylor_map")
{
    std::vector<double> x{1.0, 2.0};
    MapJet id = taylor_map(SmoothMap::identity(2), x, 2);
    CHECK(id == MapJet::identity(x, 2));
    CHECK(id.target_point() == x);

    std::vector<double> one{1.0};
    MapJet sq = taylor_map(map1("y^2"), one, 2);
    oracle::Poly shifted{{{0}, 1.0}, {{1}, 1.0}};
    CHECK(oracle::from(sq.components()[0]) == oracle::reduce(oracle::mul(shifted, shifted), 2));
    CHECK(sq.target_point() == std::vector<double>{1.0});

    std::vector<double> c{4.0, -1.0};
    MapJet cj = taylor_map(SmoothMap::constant(1, c), one, 3);
    CHECK(cj.target_point() == c);
    for (const auto& comp : cj.components())
        CHECK(maximal_ideal_part(comp).is_zero());
}

TEST_CASE("jets_equivalent")
{
    std::vector<double> zero{0.0};
    CHECK(jets_equivalent(map1("y"), map1("y + y^3"), zero, 2));
    CHECK_FALSE(jets_equivalent(map1("y"), map1("y + y^3"), zero, 3));
    CHECK(jets_equivalent(map1("sin(y)"), map1("sin(y)"), zero, 5));
    // sin and t - t^3/6 agree to order 4 at 0
    CHECK(jets_equivalent(map1("sin(y)"), map1("y - y^3/6"), zero, 4));
    CHECK_FALSE(jets_equivalent(map1("sin(y)"), map1("y - y^3/6"), zero, 5));
    CHECK_THROWS_AS(jets_equivalent(map1("y"), SmoothMap::identity(2), zero, 1), ArityMismatch);
}

TEST_CASE("jet_compose")
{
    std::vector<double> zero{0.0}, one{1.0};
    MapJet inner = taylor_map(map1("1 + y"), zero, 2);
    MapJet outer = taylor_map(map1("y^2"), one, 2);
    MapJet c = jet_compose(outer, inner);
    oracle::Poly lin{{{0}, 1.0}, {{1}, 1.0}};
    CHECK(oracle::from(c.components()[0]) == oracle::reduce(oracle::mul(lin, lin), 2));
    CHECK(c.source_point() == zero);

    MapJet id = MapJet::identity(one, 2);
    CHECK(jet_compose(outer, id) == outer);
    CHECK(jet_compose(MapJet::identity(inner.target_point(), 2), inner) == inner);

    std::vector<double> k{3.0};
    MapJet cst = taylor_map(SmoothMap::constant(1, k), one, 2);
    CHECK(jet_compose(cst, inner).target_point() == k);
}

TEST_CASE("jet_compose errors")
{
    std::vector<double> zero{0.0}, one{1.0};
    MapJet inner = taylor_map(map1("y"), zero, 2);
    CHECK_THROWS_AS(jet_compose(taylor_map(map1("y"), one, 2), inner), InvalidArgument);
    CHECK_THROWS_AS(jet_compose(taylor_map(map1("y"), zero, 3), inner), InvalidArgument);
    std::vector<double> z2{0.0, 0.0};
    CHECK_THROWS_AS(jet_compose(MapJet::identity(z2, 2), inner), ArityMismatch);
}

TEST_CASE("MapJet validates its components")
{
    AlgebraSpec wrong(1, 3);
    CHECK_THROWS(MapJet({0.0}, 2, {AlgebraElement::one(wrong)}));
}

TEST_CASE("chain rule on a fixed instance")
{
    // (phi ∘ psi)'s jet is the composite of jets
    SmoothMap psi(2, {parse_expr("y1 * y2"), parse_expr("sin(y1) + y2")});
    SmoothMap phi(2, {parse_expr("exp(y1) - y2^2")});
    std::vector<double> x{0.4, -0.3};
    MapJet lhs = taylor_map(compose(phi, psi), x, 3);
    MapJet rhs = jet_compose(taylor_map(phi, psi(x), 3), taylor_map(psi, x, 3));
    CHECK(max_abs_difference(lhs, rhs) <= 1e-12);
}

TEST_CASE("map_jet properties")
{
    check_module_properties("map_jet");
}
