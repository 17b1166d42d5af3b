#include "alphajet/bundle_charts.hpp"
#include "alphajet/error.hpp"
#include "alphajet/random.hpp"

#include "support/oracle.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace alphajet;

namespace {

const AlgebraSpec dual(1, 1);

AlgebraElement el(const AlgebraSpec& s, const oracle::Poly& p)
{
    return oracle::to_element(s, p);
}

// delta -> (1 + b) delta over a 1-dimensional base
AutomorphismFamily scaling_family()
{
    return AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("1 + y1")}}});
}

AlphaJet sample(double base, double target, double v)
{
    return AlphaJet(dual, {base}, {target}, {el(dual, {{{1}, v}})});
}

} // namespace

TEST_CASE("family_at")
{
    AutomorphismFamily f = scaling_family();
    std::vector<double> b1{1.0}, bm1{-1.0};
    CHECK(family_at(f, b1).images()[0] == el(dual, {{{1}, 2}}));
    CHECK_THROWS_AS(family_at(f, bm1), NotAutomorphism);
    CHECK(family_at(AutomorphismFamily::identity(dual, 1), b1) == AlgebraMorphism::identity(dual));

    AlgebraSpec a(1, 2);
    AlgebraMorphism k(a, a, {el(a, {{{1}, 2}, {{2}, 1}})});
    AutomorphismFamily c = AutomorphismFamily::constant(k, 3);
    std::vector<double> b3{0.1, 0.2, 0.3};
    CHECK(family_at(c, b3) == k);
}

TEST_CASE("family construction errors")
{
    // a coefficient that reads a fibre coordinate is not a family over the base
    CHECK_THROWS_AS(AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("y2")}}}), ArityMismatch);
    CHECK_THROWS_AS(AutomorphismFamily(dual, 1, {{{Monomial({0}), parse_expr("1")}}}), InvalidArgument);
    std::vector<double> zero{0.0};
    AutomorphismFamily bad(dual, 1, {{{Monomial({1}), parse_expr("log(y1)")}}});
    CHECK_THROWS_AS(family_at(bad, zero), DomainError);
}

TEST_CASE("family_action")
{
    AlphaJet u(dual, {1.0}, {0.0, 0.0}, {el(dual, {{{1}, 3}}), el(dual, {{{1}, 1}})});
    std::vector<double> b{1.0};
    AlphaJet v = family_action(scaling_family(), b, u);
    CHECK(v.images()[0] == el(dual, {{{1}, 6}}));
    CHECK(v.images()[1] == el(dual, {{{1}, 2}}));
    CHECK(v.base_point() == u.base_point());
    CHECK(v.target_point() == u.target_point());
}

TEST_CASE("transition_apply")
{
    ChartTransition t(SmoothMap(1, {parse_expr("y + 1")}), SmoothMap(1, {parse_expr("2 * y")}), scaling_family());
    AlphaJet v = transition_apply(t, sample(1.0, 3.0, 1.0));
    CHECK(v.base_point() == std::vector<double>{2.0});
    CHECK(v.target_point() == std::vector<double>{6.0});
    // fibre map doubles the image, the family at x = 1 doubles it again
    CHECK(v.images()[0] == el(dual, {{{1}, 4}}));

    ChartTransition id = ChartTransition::identity(dual, 1, 1);
    AlphaJet u = sample(0.5, -1.0, 2.0);
    CHECK(transition_apply(id, u) == u);

    CHECK_THROWS_AS(ChartTransition(SmoothMap::identity(2), SmoothMap::identity(1), scaling_family()), ArityMismatch);
}

TEST_CASE("transition_compose agrees with applying twice")
{
    ChartTransition t1(SmoothMap(1, {parse_expr("y + 1")}), SmoothMap(1, {parse_expr("2 * y")}), scaling_family());
    ChartTransition t2(SmoothMap(1, {parse_expr("3 * y")}), SmoothMap(1, {parse_expr("y - 4")}),
                       AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("exp(y1)")}}}));
    ChartTransition c = transition_compose(t2, t1);
    AlphaJet u = sample(0.25, 1.5, -1.0);
    CHECK(max_abs_difference(transition_apply(c, u), transition_apply(t2, transition_apply(t1, u))) <= 1e-14);
}

TEST_CASE("cocycle_check")
{
    ChartTransition id = ChartTransition::identity(dual, 1, 1);
    std::vector<AlphaJet> samples{sample(0.0, 0.0, 1.0), sample(1.0, 2.0, -3.0), sample(-0.5, 0.25, 0.5)};
    CHECK(cocycle_check(id, id, id, samples).pass);

    ChartTransition t21(SmoothMap(1, {parse_expr("y + 1")}), SmoothMap(1, {parse_expr("2 * y")}), scaling_family());
    ChartTransition t32(SmoothMap(1, {parse_expr("2 * y")}), SmoothMap(1, {parse_expr("y + 3")}),
                        AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("2")}}}));
    ChartTransition t31 = transition_compose(t32, t21);
    CheckReport ok = cocycle_check(t21, t32, t31, samples);
    CHECK(ok.pass);
    CHECK(ok.max_abs_deviation <= 1e-12);

    // written out by hand: x -> 2x + 2, y -> 2y + 3, delta -> 2(1 + x) delta
    ChartTransition by_hand(SmoothMap(1, {parse_expr("2 * y + 2")}), SmoothMap(1, {parse_expr("2 * y + 3")}),
                            AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("2 + 2 * y1")}}}));
    CHECK(cocycle_check(t21, t32, by_hand, samples).pass);

    ChartTransition off(SmoothMap(1, {parse_expr("2 * y + 2.001")}), SmoothMap(1, {parse_expr("2 * y + 3")}),
                        AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("2 + 2 * y1")}}}));
    CheckReport bad = cocycle_check(t21, t32, off, samples);
    CHECK_FALSE(bad.pass);
    CHECK(bad.failing_sample == std::size_t{0});
    CHECK(bad.max_abs_deviation == doctest::Approx(1e-3));
}

TEST_CASE("double_trivialization_check")
{
    std::vector<AlphaJet> samples{sample(0.0, 0.0, 1.0), sample(1.0, 2.0, -3.0)};
    CHECK(double_trivialization_check(ChartTransition::identity(dual, 1, 1), samples).pass);

    ChartTransition t(SmoothMap(1, {parse_expr("y + 1")}), SmoothMap(1, {parse_expr("2 * y")}), scaling_family());
    CheckReport r = double_trivialization_check(t, samples);
    CHECK(r.pass);
    CHECK(r.max_abs_deviation < 1e-9);

    // a chart that moves the base point by the fibre point mixes the factors
    ChartMap mixing = [](const AlphaJet& u) {
        return AlphaJet(u.algebra(), {u.base_point()[0] + u.target_point()[0]}, u.target_point(), u.images());
    };
    CheckReport m = double_trivialization_check(mixing, SmoothMap::identity(1), SmoothMap::identity(1), samples);
    CHECK_FALSE(m.pass);
    CHECK(m.failing_check == "projections");
    CHECK(m.failing_sample == std::size_t{1});
}

TEST_CASE("double_trivialization on random linear transitions")
{
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng rng = Rng::derive(11, "test.linear", i);
        AlgebraSpec spec = gen::spec(rng, 2, 3, true, 1);
        std::size_t m = 1 + rng.uniform_int(0, 1), d = 1 + rng.uniform_int(0, 1);
        ChartTransition t = gen::linear_transition(rng, spec, m, d, Mode::Exact);
        std::vector<AlphaJet> samples;
        for (int s = 0; s < 5; ++s)
            samples.push_back(gen::alpha_jet(rng, spec, m, d, Mode::Exact));
        CheckReport r = double_trivialization_check(t, samples);
        CHECK(r.pass);
        CHECK(r.max_abs_deviation < 1e-9);
    }
}

TEST_CASE("smoothness_probe")
{
    std::vector<double> dir{1.0};
    ChartTransition lin(SmoothMap(1, {parse_expr("2 * y + 1")}), SmoothMap::identity(1), scaling_family());
    SmoothnessProbe a = smoothness_probe(lin, sample(0.5, 1.0, 1.0), dir);
    CHECK(a.pass);
    CHECK(a.affine);

    ChartTransition curved(SmoothMap(1, {parse_expr("y + 0.3 * sin(y)")}), SmoothMap::identity(1),
                           AutomorphismFamily(dual, 1, {{{Monomial({1}), parse_expr("exp(y1)")}}}));
    SmoothnessProbe c = smoothness_probe(curved, sample(0.5, 1.0, 1.0), dir);
    CHECK(c.pass);
    CHECK_FALSE(c.affine);
    REQUIRE(c.ratios.size() == 1);
    CHECK(c.ratios[0] == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("newton_inverse and diffeomorphism_check")
{
    SmoothMap f(1, {parse_expr("y + 0.3 * sin(y)")});
    std::vector<double> x{0.8};
    std::vector<double> y = f(x);
    auto z = newton_inverse(f, y, y);
    REQUIRE(z.has_value());
    CHECK(std::abs((*z)[0] - 0.8) <= 1e-10);

    std::vector<std::vector<double>> pts{{-1.0}, {0.0}, {2.5}};
    CHECK(diffeomorphism_check(f, pts).pass);

    // y^2 folds the line, so the round trip from -1 lands on +1
    SmoothMap fold(1, {parse_expr("y^2")});
    std::vector<std::vector<double>> neg{{-1.0}};
    CHECK_FALSE(diffeomorphism_check(fold, neg).pass);
}

TEST_CASE("chart_coordinates")
{
    AlphaJet u = sample(0.5, -1.0, 2.0);
    CHECK(chart_coordinates(u) == std::vector<double>{0.5, -1.0, 0.0, 2.0});
}

TEST_CASE("bundle_charts properties")
{
    check_module_properties("bundle_charts");
}
