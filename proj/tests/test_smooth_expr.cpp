#include "alphajet/error.hpp"
#include "alphajet/smooth_expr.hpp"

#include "support/oracle.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace alphajet;

TEST_CASE("eval")
{
    std::vector<double> p3{3.0};
    CHECK(eval(parse_expr("y^2"), p3) == 9.0);
    CHECK(eval(SmoothExpr::constant(-2.5), p3) == -2.5);
    std::vector<double> p{0.0, 5.0};
    CHECK(eval(parse_expr("exp(y1)*y2"), p) == std::exp(0.0) * 5.0);
}

TEST_CASE("eval domain errors")
{
    std::vector<double> zero{0.0}, neg{-1.0};
    CHECK_THROWS_AS(eval(parse_expr("1/y1"), zero), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("log(y1)"), zero), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("sqrt(y1)"), neg), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("y1^-2"), zero), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("y2"), zero), ArityMismatch);
}

TEST_CASE("parser")
{
    CHECK(parse_expr("y") == SmoothExpr::variable(0));
    CHECK(parse_expr("y3").arity() == 3);
    CHECK(parse_expr(" 2 * y1+3 ").to_string() == "2*y1 + 3");
    std::vector<double> p{2.0};
    CHECK(eval(parse_expr("-y1^2"), p) == -4.0);
    CHECK(eval(parse_expr("y1^(-1)"), p) == 0.5);
    CHECK(eval(parse_expr("2^3"), p) == 8.0);
    CHECK(eval(parse_expr("1 - y1 - 1"), p) == -2.0);
    CHECK(eval(parse_expr("8 / y1 / 2"), p) == 2.0);
    CHECK(eval(parse_expr("1.5e1"), p) == 15.0);
    for (const char* bad : {"", "y0", "sin y1", "(y1", "y1 +", "foo(y1)", "y1^1.5", "2 y1"})
        CHECK_THROWS_AS(parse_expr(bad), ParseError);
    try {
        parse_expr("y1 + )");
    } catch (const ParseError& e) {
        CHECK(e.location() == "column 6");
    }
}

TEST_CASE("to_string re-parses to the same tree")
{
    for (const char* s : {"sin(y1) * (y2 - 3)", "-(y1 + 2) ^ 2", "y1 / (y2 * y3)", "exp(-y1) - -2",
                          "sqrt(2 + cos(y1 ^ 3))", "y1 - (y2 - y3)", "(-1.25) * log(y1)"}) {
        SmoothExpr f = parse_expr(s);
        CHECK(parse_expr(f.to_string()) == f);
    }
}

TEST_CASE("taylor of sin at 0")
{
    AlgebraElement t = taylor(parse_expr("sin(y)"), std::vector<double>{0.0}, 3);
    // derivatives of sin at 0 cycle through 0, 1, 0, -1
    oracle::Poly expected = oracle::taylor_1d({0.0, 1.0, 0.0, -1.0});
    CHECK(oracle::max_diff(oracle::from(t), expected) <= 1e-15);
    CHECK(t.coefficient(Monomial({3})) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("taylor of a constant and of y^2")
{
    AlgebraElement c = taylor(SmoothExpr::constant(4.0), std::vector<double>{1.0, 2.0}, 3);
    CHECK(c == AlgebraElement::constant(AlgebraSpec(2, 3), 4.0));

    AlgebraElement t = taylor(parse_expr("y^2"), std::vector<double>{3.0}, 2);
    oracle::Poly shifted{{{0}, 3.0}, {{1}, 1.0}};
    CHECK(oracle::from(t) == oracle::reduce(oracle::mul(shifted, shifted), 2));
    CHECK(t.dense() == std::vector<double>{9.0, 6.0, 1.0});
}

TEST_CASE("taylor of exp, log, cos, sqrt and division at a point")
{
    const double c = 0.7;
    std::vector<double> p{c};
    auto near = [](const AlgebraElement& t, const oracle::Poly& ref) {
        return oracle::max_diff(oracle::from(t), ref) <= 1e-12;
    };
    CHECK(near(taylor(parse_expr("exp(y)"), p, 4),
               oracle::taylor_1d({std::exp(c), std::exp(c), std::exp(c), std::exp(c), std::exp(c)})));
    CHECK(near(taylor(parse_expr("log(y)"), p, 3), oracle::taylor_1d({std::log(c), 1 / c, -1 / (c * c), 2 / (c * c * c)})));
    CHECK(near(taylor(parse_expr("cos(y)"), p, 3),
               oracle::taylor_1d({std::cos(c), -std::sin(c), -std::cos(c), std::sin(c)})));
    const double s = std::sqrt(c);
    CHECK(near(taylor(parse_expr("sqrt(y)"), p, 2), oracle::taylor_1d({s, 0.5 / s, -0.25 / (s * c)})));
    CHECK(near(taylor(parse_expr("1/y"), p, 2), oracle::taylor_1d({1 / c, -1 / (c * c), 2 / (c * c * c)})));
    CHECK(near(taylor(parse_expr("y^-2"), p, 1), oracle::taylor_1d({1 / (c * c), -2 / (c * c * c)})));
}

TEST_CASE("taylor order 0 is the value")
{
    SmoothExpr f = parse_expr("exp(y1) * sin(y2) / (2 + cos(y1))");
    std::vector<double> p{0.3, -1.1};
    CHECK(taylor(f, p, 0) == AlgebraElement::constant(AlgebraSpec(2, 0), eval(f, p)));
}

TEST_CASE("taylor rejects points outside the domain")
{
    CHECK_THROWS_AS(taylor(parse_expr("log(y1)"), std::vector<double>{-1.0}, 2), DomainError);
    CHECK_THROWS_AS(taylor(parse_expr("1/(y1-1)"), std::vector<double>{1.0}, 2), DomainError);
}

TEST_CASE("smooth maps")
{
    SmoothMap phi(2, {parse_expr("y1 + y2"), parse_expr("y1 * y2")});
    std::vector<double> p{2.0, 3.0};
    CHECK(phi(p) == std::vector<double>{5.0, 6.0});
    CHECK_THROWS_AS(SmoothMap(1, {parse_expr("y2")}), ArityMismatch);
    SmoothMap sq(1, {parse_expr("y1^2")});
    SmoothMap c = compose(sq, SmoothMap(2, {parse_expr("y1 + y2")}));
    CHECK(c(p) == std::vector<double>{25.0});
    CHECK_THROWS_AS(compose(sq, phi), ArityMismatch);
}

TEST_CASE("smooth_expr properties")
{
    check_module_properties("smooth_expr");
}
