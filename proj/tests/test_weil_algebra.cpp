#include "alphajet/error.hpp"
#include "alphajet/suite.hpp"
#include "alphajet/weil_algebra.hpp"

#include "support/oracle.hpp"
#include "support/properties.hpp"

#include <doctest.h>

using namespace alphajet;

namespace {

AlgebraElement el(const AlgebraSpec& s, const oracle::Poly& p)
{
    return oracle::to_element(s, p);
}

} // namespace

TEST_CASE("monomials are listed in graded-lex order")
{
    auto ms = monomials_up_to(2, 2);
    std::vector<std::string> names;
    for (const auto& m : ms)
        names.push_back(m.to_string());
    CHECK(names == std::vector<std::string>{"1", "x1", "x2", "x1^2", "x1*x2", "x2^2"});
}

TEST_CASE("algebra_dim")
{
    CHECK(algebra_dim(AlgebraSpec(1, 0)) == 1);
    CHECK(algebra_dim(AlgebraSpec(2, 2)) == oracle::count_basis(2, 2));
    CHECK(algebra_dim(AlgebraSpec(2, 2)) == 6);
    CHECK(algebra_dim(AlgebraSpec(1, 2, {Monomial({2})})) == oracle::count_basis(1, 2, {{2}}));
    CHECK(algebra_dim(AlgebraSpec(1, 2, {Monomial({2})})) == 2);
}

TEST_CASE("relations are kept as a minimal generating set")
{
    AlgebraSpec a(2, 3, {Monomial({1, 1}), Monomial({2, 1}), Monomial({0, 4})});
    REQUIRE(a.relations().size() == 1);
    CHECK(a.relations()[0] == Monomial({1, 1}));
    CHECK(a == AlgebraSpec(2, 3, {Monomial({1, 1})}));
    CHECK_FALSE(a == AlgebraSpec(2, 3));
    CHECK(a.in_ideal(Monomial({1, 2})));
    CHECK(a.in_ideal(Monomial({0, 4})));
    CHECK_FALSE(a.in_ideal(Monomial({0, 3})));
    CHECK(a.basis_index(Monomial({1, 1})) == -1);
}

TEST_CASE("invalid specs are rejected")
{
    CHECK_THROWS_AS(AlgebraSpec(0, 1), InvalidArgument);
    CHECK_THROWS_AS(AlgebraSpec(1, -1), InvalidArgument);
    CHECK_THROWS_AS(AlgebraSpec(2, 2, {Monomial({1})}), InvalidArgument);
    CHECK_THROWS_AS(AlgebraSpec(2, 2, {Monomial({0, 0})}), InvalidArgument);
}

TEST_CASE("dual-number product")
{
    AlgebraSpec a(1, 1);
    oracle::Poly x{{{0}, 2}, {{1}, 3}}, y{{{0}, 4}, {{1}, 5}};
    oracle::Poly expected = oracle::reduce(oracle::mul(x, y), 1);
    AlgebraElement p = el(a, x) * el(a, y);
    CHECK(p == el(a, expected));
    CHECK(p.coefficient(Monomial({0})) == 8);
    CHECK(p.coefficient(Monomial({1})) == 22);

    AlgebraElement d = AlgebraElement::generator(a, 0);
    CHECK((d * d).is_zero());
}

TEST_CASE("products respect extra relations")
{
    AlgebraSpec a(2, 3, {Monomial({1, 1})});
    oracle::Poly x{{{0, 0}, 1}, {{1, 0}, 2}, {{0, 1}, -1}};
    oracle::Poly y{{{0, 0}, 3}, {{1, 0}, 1}, {{0, 2}, 4}};
    oracle::Poly expected = oracle::reduce(oracle::mul(x, y), 3, {{1, 1}});
    CHECK(el(a, x) * el(a, y) == el(a, expected));
}

TEST_CASE("normal form: zero coefficients and ideal monomials are never stored")
{
    AlgebraSpec a(1, 2);
    AlgebraElement e(a, {{Monomial({0}), 0.0}, {Monomial({1}), 1.0}, {Monomial({3}), 7.0}});
    CHECK(e.terms().size() == 1);
    AlgebraElement z = e - e;
    CHECK(z.is_zero());
    CHECK(z == AlgebraElement(a));
}

TEST_CASE("unit law")
{
    AlgebraSpec a(2, 3);
    AlgebraElement x(a, {{Monomial({0, 0}), 2}, {Monomial({1, 2}), -1}});
    CHECK(AlgebraElement::one(a) * x == x);
}

TEST_CASE("augmentation and maximal ideal part")
{
    AlgebraSpec a(1, 1);
    AlgebraElement x = el(a, {{{0}, 2}, {{1}, 3}});
    CHECK(augmentation(x) == 2);
    CHECK(augmentation(AlgebraElement::one(a)) == 1);
    CHECK(augmentation(el(a, {{{0}, 2}, {{1}, 1}}) * el(a, {{{0}, 3}, {{1}, 1}})) == 6);
    CHECK(maximal_ideal_part(x) == el(a, {{{1}, 3}}));
    CHECK(maximal_ideal_part(AlgebraElement::one(a)).is_zero());

    AlgebraSpec b(2, 2);
    AlgebraElement y = el(b, {{{0, 0}, 5}, {{1, 0}, 1}, {{1, 1}, 1}});
    CHECK(maximal_ideal_part(y) == el(b, {{{1, 0}, 1}, {{1, 1}, 1}}));
}

TEST_CASE("spec mismatch")
{
    AlgebraElement a = AlgebraElement::one(AlgebraSpec(1, 1));
    AlgebraElement b = AlgebraElement::one(AlgebraSpec(1, 2));
    CHECK_THROWS_AS(a + b, SpecMismatch);
    CHECK_THROWS_AS(a * b, SpecMismatch);
}

TEST_CASE("morphism_apply")
{
    AlgebraSpec a3(1, 2), a2(1, 1);
    AlgebraMorphism trunc(a3, a2, {AlgebraElement::generator(a2, 0)});
    AlgebraElement in = el(a3, {{{0}, 1}, {{1}, 1}, {{2}, 1}});
    oracle::Poly expected = oracle::reduce(oracle::substitute(oracle::from(in), {{{{1}, 1.0}}}, 1), 1);
    CHECK(morphism_apply(trunc, in) == el(a2, expected));
    CHECK(morphism_apply(trunc, in) == el(a2, {{{0}, 1}, {{1}, 1}}));

    CHECK(morphism_apply(AlgebraMorphism::identity(a3), in) == in);

    AlgebraMorphism twice(a3, a3, {el(a3, {{{1}, 2}})});
    CHECK(morphism_apply(twice, el(a3, {{{2}, 1}})) == el(a3, {{{2}, 4}}));

    CHECK_THROWS_AS(morphism_apply(twice, AlgebraElement::one(a2)), SpecMismatch);
}

TEST_CASE("invalid morphisms are rejected")
{
    AlgebraSpec a2(1, 1), a3(1, 2);
    // x^2 = 0 in the source but x -> d would need d^2 = 0 in R[d]/m^3
    CHECK_THROWS_AS(AlgebraMorphism(a2, a3, {AlgebraElement::generator(a3, 0)}), InvalidMorphism);
    // image with a constant term
    CHECK_THROWS_AS(AlgebraMorphism(a3, a3, {AlgebraElement::one(a3)}), InvalidMorphism);
    CHECK_THROWS_AS(AlgebraMorphism(a3, a3, {}), InvalidMorphism);
    AlgebraSpec rel(2, 2, {Monomial({1, 1})});
    AlgebraSpec free(2, 2);
    CHECK_THROWS_AS(AlgebraMorphism(rel, free, {AlgebraElement::generator(free, 0), AlgebraElement::generator(free, 1)}),
                    InvalidMorphism);
}

TEST_CASE("morphism_compose")
{
    AlgebraSpec a(1, 2);
    AlgebraMorphism k1(a, a, {el(a, {{{1}, 1}, {{2}, 1}})});
    AlgebraMorphism k2(a, a, {el(a, {{{1}, 2}})});
    AlgebraMorphism c = morphism_compose(k2, k1);
    oracle::Poly expected =
        oracle::reduce(oracle::substitute(oracle::from(k1.images()[0]), {oracle::from(k2.images()[0])}, 1), 2);
    CHECK(c.images()[0] == el(a, expected));
    CHECK(c.images()[0] == el(a, {{{1}, 2}, {{2}, 4}}));

    auto id = AlgebraMorphism::identity(a);
    CHECK(morphism_compose(id, k1) == k1);
    CHECK(morphism_compose(k1, id) == k1);
}

TEST_CASE("is_automorphism")
{
    AlgebraSpec a(1, 2);
    CHECK(is_automorphism(AlgebraMorphism::identity(a)));
    CHECK(is_automorphism(AlgebraMorphism(a, a, {el(a, {{{1}, 2}, {{2}, 1}})})));
    CHECK_FALSE(is_automorphism(AlgebraMorphism(a, a, {el(a, {{{2}, 1}})})));

    // matrix on {1, x, x^2} for x -> 2x + x^2 is triangular with diagonal 1, 2, 4
    auto m = morphism_matrix(AlgebraMorphism(a, a, {el(a, {{{1}, 2}, {{2}, 1}})}));
    CHECK(m[0][0] == 1);
    CHECK(m[1][1] == 2);
    CHECK(m[2][2] == 4);
    CHECK(m[1][0] == 0);

    // with x1^2 = 0 a shear x2 -> x1 + x2 is fine, swapping the generators is not
    AlgebraSpec b(2, 2, {Monomial({2, 0})});
    const AlgebraElement x1 = AlgebraElement::generator(b, 0), x2 = AlgebraElement::generator(b, 1);
    CHECK(is_automorphism(AlgebraMorphism(b, b, {x1, x1 + x2})));
    CHECK_THROWS_AS(AlgebraMorphism(b, b, {x2, x1}), InvalidMorphism);
}

TEST_CASE("is_automorphism with many degrees and large products")
{
    // triangular linear part with unit diagonal; its 35x35 matrix on R[x1,x2,x3]/m^5
    // is badly conditioned as a whole
    AlgebraSpec a(3, 4);
    AlgebraMorphism k(a, a,
                      {el(a, {{{1, 0, 0}, -1}, {{0, 1, 0}, -3}, {{0, 2, 0}, -3}, {{1, 2, 0}, 3}, {{0, 3, 0}, -2},
                              {{0, 0, 3}, -3}, {{0, 0, 4}, -3}}),
                       el(a, {{{0, 1, 0}, -1}, {{0, 0, 1}, 2}, {{1, 0, 1}, -3}, {{3, 0, 0}, 2}, {{1, 0, 2}, 3}}),
                       el(a, {{{0, 0, 1}, 1}, {{2, 0, 0}, -3}, {{0, 3, 0}, 3}, {{4, 0, 0}, -3}, {{0, 4, 0}, -1}})});
    CHECK(is_automorphism(k));
    AlgebraMorphism flat(a, a, {el(a, {{{1, 0, 0}, 1}}), el(a, {{{1, 0, 0}, 2}, {{0, 0, 2}, 1}}), el(a, {{{0, 0, 1}, 1}})});
    CHECK_FALSE(is_automorphism(flat));
}

TEST_CASE("nilpotency of basis monomials")
{
    for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k <= 4; ++k) {
            AlgebraSpec a(n, k);
            for (const auto& b : a.basis())
                if (!b.is_one())
                    CHECK(pow(AlgebraElement(a, {{b, 1.0}}), static_cast<unsigned>(k + 1)).is_zero());
        }
}

TEST_CASE("weil_algebra properties")
{
    check_module_properties("weil_algebra");
}
