#include "alphajet/error.hpp"
#include "alphajet/json_io.hpp"
#include "alphajet/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace alphajet;
using io::json;

namespace {

// Text round trip: serialise, print, parse the text back.
json reparse(const json& j)
{
    return io::parse_json(j.dump());
}

std::string location_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.location();
    }
    return "<no error>";
}

} // namespace

TEST_CASE("round trips are bit-exact")
{
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = Rng::derive(5, "test.json", i);
        Mode mode = i % 2 ? Mode::Float : Mode::Exact;
        AlgebraSpec spec = gen::spec(rng, 3, 3, true, 1);
        CHECK(io::spec_from_json(reparse(io::to_json(spec))) == spec);

        AlgebraElement a = gen::element(rng, spec, mode);
        CHECK(io::element_from_json(reparse(io::to_json(a))) == a);

        AlgebraMorphism id = AlgebraMorphism::identity(spec);
        CHECK(io::morphism_from_json(reparse(io::to_json(id))) == id);

        SmoothExpr f = gen::smooth(rng, 2);
        CHECK(io::expr_from_json(reparse(io::to_json(f))) == f);

        SmoothMap phi = gen::polynomial_map(rng, 2, 2, 3, mode);
        CHECK(io::map_from_json(reparse(io::to_json(phi))) == phi);

        MapJet j = gen::map_jet(rng, 2, 2, 2, mode);
        CHECK(io::map_jet_from_json(reparse(io::to_json(j))) == j);

        AlphaJet u = gen::alpha_jet(rng, spec, 2, 2, mode);
        CHECK(io::alpha_jet_from_json(reparse(io::to_json(u))) == u);

        AutomorphismFamily fam = gen::smooth_family(rng, spec, 2);
        CHECK(io::to_json(io::family_from_json(reparse(io::to_json(fam)))) == io::to_json(fam));

        ChartTransition t = gen::nonlinear_transition(rng, spec, 2, 2);
        CHECK(io::to_json(io::transition_from_json(reparse(io::to_json(t)))) == io::to_json(t));
    }
}

TEST_CASE("awkward doubles survive the text form")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 4.9e-324, std::nextafter(1.0, 2.0)}) {
        AlgebraSpec s(1, 1);
        AlgebraElement a(s, {{Monomial({1}), v}});
        CHECK(io::element_from_json(reparse(io::to_json(a))).coefficient(Monomial({1})) == v);
    }
}

TEST_CASE("serialisation is canonical")
{
    AlgebraSpec s(2, 2);
    json j = io::parse_json(R"({"spec":{"n":2,"k":2},"terms":[{"exp":[0,2],"coef":1},{"exp":[1,0],"coef":2},{"exp":[0,0],"coef":3}]})");
    AlgebraElement a = io::element_from_json(j);
    CHECK(io::to_json(a).dump() ==
          R"({"spec":{"n":2,"k":2,"relations":[]},"terms":[{"exp":[0,0],"coef":3.0},{"exp":[1,0],"coef":2.0},{"exp":[0,2],"coef":1.0}]})");
}

TEST_CASE("expressions accept infix text and numbers")
{
    CHECK(io::expr_from_json(json("sin(y1) + 2")) == parse_expr("sin(y1) + 2"));
    CHECK(io::expr_from_json(json(2.5)) == SmoothExpr::constant(2.5));
    json ast = io::parse_json(R"({"op":"mul","args":[{"op":"const","value":2},{"op":"var","index":1}]})");
    CHECK(io::expr_from_json(ast) == parse_expr("2 * y1"));
}

TEST_CASE("error locations are JSON pointers")
{
    json u = io::parse_json(R"({"algebra":{"n":1,"k":1},"x":[0],"p":[1],
                               "images":[{"spec":{"n":1,"k":1},"terms":[{"exp":[1],"coef":"x"}]}]})");
    CHECK(location_of([&] { io::alpha_jet_from_json(u); }) == "/images/0/terms/0/coef");

    json missing = io::parse_json(R"({"algebra":{"n":1,"k":1},"x":[0],"images":[]})");
    // a missing key is reported at the object that should hold it
    CHECK(location_of([&] { io::alpha_jet_from_json(missing); }) == "/");
    CHECK(location_of([&] { io::alpha_jet_from_json(missing, "/jet"); }) == "/jet");
    CHECK_THROWS_AS(io::alpha_jet_from_json(missing), InvalidArgument);

    json bad_spec = io::parse_json(R"({"n":0,"k":1})");
    CHECK(location_of([&] { io::spec_from_json(bad_spec); }) == "/");
    CHECK_THROWS_AS(io::spec_from_json(bad_spec), InvalidArgument);

    json bad_exp = io::parse_json(R"({"spec":{"n":2,"k":1},"terms":[{"exp":[1],"coef":1}]})");
    CHECK(location_of([&] { io::element_from_json(bad_exp); }) == "/terms/0/exp");

    CHECK(location_of([] { io::expr_from_json(json("y1 +"), "/f"); }).rfind("/f column", 0) == 0);
    CHECK_THROWS_AS(io::parse_json("{\"n\": 1,"), ParseError);
    CHECK(location_of([] { io::parse_json("[1, 2"); }).rfind("byte ", 0) == 0);
}

TEST_CASE("library errors inside a document carry its location")
{
    // constant term in an alpha-jet image
    json u = io::parse_json(R"({"algebra":{"n":1,"k":1},"x":[0],"p":[1],
                               "images":[{"spec":{"n":1,"k":1},"terms":[{"exp":[0],"coef":1}]}]})");
    CHECK_THROWS_AS(io::alpha_jet_from_json(u), Error);
    CHECK(location_of([&] { io::alpha_jet_from_json(u, "/jet"); }).rfind("/jet", 0) == 0);
}

TEST_CASE("check reports")
{
    CheckReport r;
    r.pass = false;
    r.max_abs_deviation = INFINITY;
    r.failing_sample = 3;
    r.failing_check = "projections";
    json j = io::to_json(r);
    CHECK(j["pass"] == false);
    CHECK(j["max_abs_deviation"].is_null());
    CHECK(j["failing_sample"] == 3);
    CHECK(j["failing_check"] == "projections");
}
