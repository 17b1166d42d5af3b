#include "alphajet/cli.hpp"
#include "alphajet/json_io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using alphajet::io::json;

namespace {

struct Result
{
    int status;
    std::string text;
    json body;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out;
    int status = alphajet::cli::run(args, out);
    Result r{status, out.str(), json()};
    if (!r.text.empty() && (r.text[0] == '{' || r.text[0] == '['))
        r.body = json::parse(r.text);
    return r;
}

const char* kDualJet =
    R"({"algebra":{"n":1,"k":1},"x":[0],"p":[3],"images":[{"spec":{"n":1,"k":1},"terms":[{"exp":[1],"coef":1}]}]})";

std::string transition(const char* base, const char* fiber, const char* coef)
{
    return std::string(R"({"base_map":{"arity":1,"components":[")") + base +
           R"("]},"fiber_map":{"arity":1,"components":[")" + fiber +
           R"("]},"family":{"algebra":{"n":1,"k":1},"base_arity":1,"images":[[{"exp":[1],"coef":")" + coef + R"("}]]}})";
}

double coef(const json& element, int exp)
{
    for (const auto& t : element["terms"])
        if (t["exp"][0] == exp)
            return t["coef"].get<double>();
    return 0.0;
}

} // namespace

TEST_CASE("taylor")
{
    Result r = call({"taylor", "--expr", "sin(y)", "--point", "[0]", "--k", "3"});
    REQUIRE(r.status == 0);
    const json& t = r.body["taylor"];
    CHECK(coef(t, 0) == 0.0);
    CHECK(coef(t, 1) == 1.0);
    CHECK(coef(t, 2) == 0.0);
    CHECK(std::abs(coef(t, 3) + 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("alphajet eval and push")
{
    Result r = call({"alphajet", "eval", "--jet", kDualJet, "--expr", "y^2"});
    REQUIRE(r.status == 0);
    CHECK(r.body["augmentation"] == 9.0);
    CHECK(coef(r.body["value"], 0) == 9.0);
    CHECK(coef(r.body["value"], 1) == 6.0);

    Result p = call({"alphajet", "push", "--jet", kDualJet, "--map", R"({"arity":1,"components":["y^2"]})"});
    REQUIRE(p.status == 0);
    CHECK(p.body["jet"]["p"] == json::array({9.0}));
    CHECK(coef(p.body["jet"]["images"][0], 1) == 6.0);
}

TEST_CASE("jet subcommands and chi")
{
    const char* inner = R"({"x":[0],"k":2,"components":[{"spec":{"n":1,"k":2},"terms":[{"exp":[0],"coef":1},{"exp":[1],"coef":1}]}]})";
    const char* outer = R"({"x":[1],"k":2,"components":[{"spec":{"n":1,"k":2},"terms":[{"exp":[0],"coef":1},{"exp":[1],"coef":2},{"exp":[2],"coef":1}]}]})";
    Result c = call({"jet", "compose", "--outer", outer, "--inner", inner});
    REQUIRE(c.status == 0);
    CHECK(coef(c.body["jet"]["components"][0], 2) == 1.0);

    Result e = call({"jet", "equiv", "--phi", R"({"arity":1,"components":["y"]})", "--psi",
                     R"({"arity":1,"components":["y + y^3"]})", "--x", "[0]", "--k", "2"});
    REQUIRE(e.status == 0);
    CHECK(e.body["equivalent"] == true);

    Result x = call({"chi", "--jet", outer});
    REQUIRE(x.status == 0);
    Result back = call({"chi-inv", "--jet", x.body["alpha_jet"].dump()});
    REQUIRE(back.status == 0);
    CHECK(alphajet::io::map_jet_from_json(back.body["jet"]) == alphajet::io::map_jet_from_json(json::parse(outer)));
}

TEST_CASE("chi roundtrip suite")
{
    Result r = call({"chi", "roundtrip", "--seed", "7", "--cases", "100"});
    CHECK(r.status == 0);
    CHECK(r.body["pass"] == true);
    CHECK(r.body["cases"] == 100);
    CHECK(r.body["seed"] == 7);
}

TEST_CASE("bundle subcommands")
{
    std::string t21 = transition("y + 1", "2 * y", "1 + y1");
    std::string t32 = transition("2 * y", "y + 3", "2");
    std::string t31 = transition("2 * y + 2", "2 * y + 3", "2 + 2 * y1");
    Result ok = call({"bundle", "cocycle", "--t21", t21, "--t32", t32, "--t31", t31, "--seed", "1", "--samples", "10"});
    CHECK(ok.status == 0);
    CHECK(ok.body["pass"] == true);

    std::string wrong = transition("2 * y + 2", "2 * y + 3", "2 + y1");
    Result bad = call({"bundle", "cocycle", "--t21", t21, "--t32", t32, "--t31", wrong, "--seed", "1", "--samples", "10"});
    CHECK(bad.status == 1);
    CHECK(bad.body["pass"] == false);

    Result dc = call({"bundle", "doublecheck", "--transition", t21, "--seed", "3", "--samples", "10"});
    CHECK(dc.status == 0);
    CHECK(dc.body["max_abs_deviation"].get<double>() < 1e-9);

    Result tr = call({"bundle", "transition", "--transition", t21, "--jet", kDualJet});
    REQUIRE(tr.status == 0);
    CHECK(tr.body["jet"]["p"] == json::array({6.0}));
    CHECK(tr.body["jet"]["x"] == json::array({1.0}));
}

TEST_CASE("suite output is deterministic")
{
    Result a = call({"suite", "--seed", "4", "--mode", "exact", "--cases", "5"});
    Result b = call({"suite", "--seed", "4", "--mode", "exact", "--cases", "5"});
    CHECK(a.status == 0);
    CHECK(a.text == b.text);
    CHECK(a.body["pass"] == true);
    CHECK(a.body["properties"].size() > 30);
}

TEST_CASE("input errors")
{
    Result u = call({"frobnicate"});
    CHECK(u.status == 2);
    CHECK(u.body["code"] == "usage");
    CHECK(u.body["location"] == "argv[1]");

    Result m = call({"alphajet", "eval", "--jet", "{\"algebra\":", "--expr", "y"});
    CHECK(m.status == 2);
    CHECK(m.body["code"] == "parse_error");

    Result loc = call({"alphajet", "eval", "--jet",
                       R"({"algebra":{"n":1,"k":1},"x":[0],"p":[3],"images":[{"spec":{"n":1,"k":1},"terms":[{"exp":[1],"coef":"a"}]}]})",
                       "--expr", "y"});
    CHECK(loc.status == 2);
    CHECK(loc.body["location"] == "--jet /images/0/terms/0/coef");

    Result ex = call({"alphajet", "eval", "--jet", kDualJet, "--expr", "y + * 2"});
    CHECK(ex.status == 2);
    CHECK(ex.body["location"].get<std::string>().rfind("--expr column", 0) == 0);

    Result file = call({"chi", "--jet", "/nonexistent/file.json"});
    CHECK(file.status == 2);
    CHECK(file.body["code"] == "io_error");

    Result missing = call({"taylor", "--expr", "y"});
    CHECK(missing.status == 2);
    CHECK(missing.body["code"] == "usage");

    Result dom = call({"taylor", "--expr", "log(y)", "--point", "[-1]", "--k", "1"});
    CHECK(dom.status == 2);
    CHECK(dom.body["code"] == "domain_error");
}

TEST_CASE("file arguments and --output")
{
    std::string in = "cli_test_jet.json", out = "cli_test_out.json";
    std::ofstream(in) << kDualJet;
    Result r = call({"--output", out, "alphajet", "eval", "--jet", in, "--expr", "y^2"});
    CHECK(r.status == 0);
    CHECK(r.text.empty());
    std::ifstream f(out);
    json j = json::parse(f);
    CHECK(j["augmentation"] == 9.0);
    std::remove(in.c_str());
    std::remove(out.c_str());
}
