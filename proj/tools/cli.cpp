#include "alphajet/cli.hpp"

#include "alphajet/alpha_jet.hpp"
#include "alphajet/bundle_charts.hpp"
#include "alphajet/error.hpp"
#include "alphajet/json_io.hpp"
#include "alphajet/map_jet.hpp"
#include "alphajet/random.hpp"
#include "alphajet/suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace alphajet::cli {

namespace {

using io::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct IoError : Error
{
    IoError(const std::string& msg, const std::string& where) : Error("io_error", msg, where) {}
};

bool is_inline(const std::string& arg)
{
    auto it = std::find_if_not(arg.begin(), arg.end(), [](unsigned char c) { return std::isspace(c); });
    return it != arg.end() && (*it == '{' || *it == '[' || *it == '"');
}

// Inline JSON or a file name. Errors name the flag they came from.
json load(const std::string& arg, const std::string& flag)
{
    std::string text;
    if (is_inline(arg)) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in)
            throw IoError("cannot read '" + arg + "'", flag);
        std::ostringstream s;
        s << in.rdbuf();
        text = s.str();
    }
    try {
        return io::parse_json(text);
    } catch (const Error& e) {
        throw ParseError(e.what(), flag + " " + e.location());
    }
}

// Re-tags JSON-pointer locations with the flag they belong to.
template <typename F>
auto from(const std::string& arg, const std::string& flag, F&& parse)
{
    json j = load(arg, flag);
    try {
        return parse(j);
    } catch (Error& e) {
        e.set_location(flag + (e.location().empty() ? "" : " " + e.location()));
        throw;
    }
}

SmoothExpr expr_arg(const std::string& arg, const std::string& flag)
{
    if (!arg.empty() && arg.front() == '{')
        return from(arg, flag, [](const json& j) { return io::expr_from_json(j); });
    try {
        return parse_expr(arg);
    } catch (const Error& e) {
        throw ParseError(e.what(), flag + " " + e.location());
    }
}

json result_json(const PropertyResult& r)
{
    json j{{"module", r.module},
           {"name", r.name},
           {"pass", r.pass()},
           {"cases", r.cases},
           {"failures", r.failures}};
    if (std::isfinite(r.max_abs_deviation))
        j["max_abs_deviation"] = r.max_abs_deviation;
    else
        j["max_abs_deviation"] = nullptr;
    if (!r.first_failure.empty())
        j["first_failure"] = r.first_failure;
    return j;
}

std::string mode_name(Mode m)
{
    return m == Mode::Exact ? "exact" : "float";
}

// Random alpha-jets over the charts of a transition, drawn from the seed:
// integer images, base and target points uniform in the [-1, 1] box.
std::vector<AlphaJet> sample_jets(const ChartTransition& t, std::uint64_t seed, std::size_t count)
{
    std::vector<AlphaJet> out;
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = Rng::derive(seed, "cli.samples", i);
        AlphaJet u = gen::alpha_jet(rng, t.family.algebra(), t.base_map.arity(), t.fiber_map.arity(), Mode::Exact);
        out.emplace_back(u.algebra(), gen::point(rng, u.base_point().size(), Mode::Float),
                         gen::point(rng, u.target_dim(), Mode::Float), u.images());
    }
    return out;
}

json error_json(const std::string& code, const std::string& message, const std::string& location)
{
    return json{{"code", code}, {"message", message}, {"location", location}};
}

std::string dump(const json& j)
{
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

struct Command
{
    json result;
    int status = kOk;
};

} // namespace

int run(std::span<const std::string> args, std::ostream& out)
{
    CLI::App app{"Weil algebras, jets and alpha-jets", "alphajet"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("--output", output, "write the JSON result to this file");

    // option storage shared by all subcommands
    std::string expr, point, jet, map, outer, inner, phi, psi, transition, t21, t32, t31;
    int k = 0;
    std::uint64_t seed = 0;
    std::size_t cases = 100, samples = 20;
    std::string mode = "exact";

    auto* taylor_cmd = app.add_subcommand("taylor", "Taylor polynomial of an expression at a point");
    taylor_cmd->add_option("--expr", expr, "infix expression or JSON AST")->required();
    taylor_cmd->add_option("--point", point, "expansion point (JSON array)")->required();
    taylor_cmd->add_option("--k", k, "truncation order")->required()->check(CLI::Range(0, 64));

    auto* jet_cmd = app.add_subcommand("jet", "k-jets of maps");
    jet_cmd->require_subcommand(1);
    auto* jet_compose_cmd = jet_cmd->add_subcommand("compose", "truncated composition outer ∘ inner");
    jet_compose_cmd->add_option("--outer", outer, "MapJet")->required();
    jet_compose_cmd->add_option("--inner", inner, "MapJet")->required();
    auto* jet_equiv_cmd = jet_cmd->add_subcommand("equiv", "do two maps have the same k-jet at x");
    jet_equiv_cmd->add_option("--phi", phi, "SmoothMap")->required();
    jet_equiv_cmd->add_option("--psi", psi, "SmoothMap")->required();
    jet_equiv_cmd->add_option("--x", point, "source point (JSON array)")->required();
    jet_equiv_cmd->add_option("--k", k, "order")->required()->check(CLI::Range(0, 64));

    auto* aj_cmd = app.add_subcommand("alphajet", "alpha-jets");
    aj_cmd->require_subcommand(1);
    auto* aj_eval_cmd = aj_cmd->add_subcommand("eval", "u(f)");
    aj_eval_cmd->add_option("--jet", jet, "AlphaJet")->required();
    aj_eval_cmd->add_option("--expr", expr, "infix expression or JSON AST")->required();
    auto* aj_push_cmd = aj_cmd->add_subcommand("push", "pushforward A(phi)(u)");
    aj_push_cmd->add_option("--jet", jet, "AlphaJet")->required();
    aj_push_cmd->add_option("--map", map, "SmoothMap")->required();

    auto* chi_cmd = app.add_subcommand("chi", "alpha-jet of a map jet");
    chi_cmd->require_subcommand(0, 1);
    chi_cmd->add_option("--jet", jet, "MapJet");
    auto* chi_rt_cmd = chi_cmd->add_subcommand("roundtrip", "random round trips through chi and its inverse");
    chi_rt_cmd->add_option("--seed", seed, "64-bit seed");
    chi_rt_cmd->add_option("--cases", cases, "number of cases");
    chi_rt_cmd->add_option("--mode", mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));

    auto* chi_inv_cmd = app.add_subcommand("chi-inv", "map jet of a jet-type alpha-jet");
    chi_inv_cmd->add_option("--jet", jet, "AlphaJet")->required();

    auto* bundle_cmd = app.add_subcommand("bundle", "chart transitions of the alpha-jet bundle");
    bundle_cmd->require_subcommand(1);
    auto* b_tr_cmd = bundle_cmd->add_subcommand("transition", "apply a chart transition");
    b_tr_cmd->add_option("--transition", transition, "ChartTransition")->required();
    b_tr_cmd->add_option("--jet", jet, "AlphaJet")->required();
    auto* b_co_cmd = bundle_cmd->add_subcommand("cocycle", "T32 ∘ T21 == T31 on sampled alpha-jets");
    b_co_cmd->add_option("--t21", t21, "ChartTransition")->required();
    b_co_cmd->add_option("--t32", t32, "ChartTransition")->required();
    b_co_cmd->add_option("--t31", t31, "ChartTransition")->required();
    b_co_cmd->add_option("--seed", seed, "64-bit seed");
    b_co_cmd->add_option("--samples", samples, "number of sampled alpha-jets");
    auto* b_dc_cmd = bundle_cmd->add_subcommand("doublecheck", "projection and representation checks");
    b_dc_cmd->add_option("--transition", transition, "ChartTransition")->required();
    b_dc_cmd->add_option("--seed", seed, "64-bit seed");
    b_dc_cmd->add_option("--samples", samples, "number of sampled alpha-jets");

    auto* suite_cmd = app.add_subcommand("suite", "run every property suite");
    suite_cmd->add_option("--seed", seed, "64-bit seed");
    suite_cmd->add_option("--mode", mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
    suite_cmd->add_option("--cases", cases, "cases per property (default: each property's own)");

    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
        auto subs = app.get_subcommands([&](CLI::App* s) { return s->get_name() == args[0]; });
        if (subs.empty()) {
            out << dump(error_json("usage", "unknown subcommand '" + args[0] + "'", "argv[1]"));
            return kInputError;
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        out << dump(error_json("usage", e.what(), e.get_name()));
        return kInputError;
    }

    Command cmd;
    try {
        if (*taylor_cmd) {
            SmoothExpr f = expr_arg(expr, "--expr");
            auto p = from(point, "--point", [](const json& j) { return io::point_from_json(j); });
            cmd.result = json{{"expr", f.to_string()}, {"point", p}, {"k", k}, {"taylor", io::to_json(taylor(f, p, k))}};
        } else if (*jet_compose_cmd) {
            MapJet o = from(outer, "--outer", [](const json& j) { return io::map_jet_from_json(j); });
            MapJet i = from(inner, "--inner", [](const json& j) { return io::map_jet_from_json(j); });
            cmd.result = json{{"jet", io::to_json(jet_compose(o, i))}};
        } else if (*jet_equiv_cmd) {
            SmoothMap a = from(phi, "--phi", [](const json& j) { return io::map_from_json(j); });
            SmoothMap b = from(psi, "--psi", [](const json& j) { return io::map_from_json(j); });
            auto x = from(point, "--x", [](const json& j) { return io::point_from_json(j); });
            cmd.result = json{{"equivalent", jets_equivalent(a, b, x, k)}, {"k", k}};
        } else if (*aj_eval_cmd) {
            AlphaJet u = from(jet, "--jet", [](const json& j) { return io::alpha_jet_from_json(j); });
            SmoothExpr f = expr_arg(expr, "--expr");
            AlgebraElement v = eval(u, f);
            cmd.result = json{{"value", io::to_json(v)}, {"augmentation", augmentation(v)}};
        } else if (*aj_push_cmd) {
            AlphaJet u = from(jet, "--jet", [](const json& j) { return io::alpha_jet_from_json(j); });
            SmoothMap m = from(map, "--map", [](const json& j) { return io::map_from_json(j); });
            cmd.result = json{{"jet", io::to_json(pushforward(m, u))}};
        } else if (*chi_rt_cmd) {
            SuiteOptions opt{seed, mode == "exact" ? Mode::Exact : Mode::Float, cases};
            PropertyResult r = run_property(find_property("chi.roundtrip"), opt);
            cmd.result = json{{"pass", r.pass()}, {"cases", r.cases}, {"seed", seed}, {"failures", r.failures}};
            if (!r.pass())
                cmd.result["first_failure"] = r.first_failure;
            cmd.status = r.pass() ? kOk : kCheckFailed;
        } else if (*chi_cmd) {
            if (jet.empty())
                throw InvalidArgument("chi needs --jet (or the roundtrip subcommand)", "--jet");
            MapJet j = from(jet, "--jet", [](const json& v) { return io::map_jet_from_json(v); });
            cmd.result = json{{"alpha_jet", io::to_json(chi(j))}};
        } else if (*chi_inv_cmd) {
            AlphaJet u = from(jet, "--jet", [](const json& j) { return io::alpha_jet_from_json(j); });
            cmd.result = json{{"jet", io::to_json(chi_inverse(u))}};
        } else if (*b_tr_cmd) {
            ChartTransition t = from(transition, "--transition", [](const json& j) { return io::transition_from_json(j); });
            AlphaJet u = from(jet, "--jet", [](const json& j) { return io::alpha_jet_from_json(j); });
            cmd.result = json{{"jet", io::to_json(transition_apply(t, u))}};
        } else if (*b_co_cmd) {
            auto parse_t = [](const json& j) { return io::transition_from_json(j); };
            ChartTransition a = from(t21, "--t21", parse_t);
            ChartTransition b = from(t32, "--t32", parse_t);
            ChartTransition c = from(t31, "--t31", parse_t);
            CheckReport r = cocycle_check(a, b, c, sample_jets(a, seed, samples));
            cmd.result = io::to_json(r);
            cmd.result["seed"] = seed;
            cmd.result["samples"] = samples;
            cmd.status = r.pass ? kOk : kCheckFailed;
        } else if (*b_dc_cmd) {
            ChartTransition t = from(transition, "--transition", [](const json& j) { return io::transition_from_json(j); });
            CheckReport r = double_trivialization_check(t, sample_jets(t, seed, samples));
            cmd.result = io::to_json(r);
            cmd.result["seed"] = seed;
            cmd.result["samples"] = samples;
            cmd.status = r.pass ? kOk : kCheckFailed;
        } else if (*suite_cmd) {
            bool explicit_cases = suite_cmd->count("--cases") > 0;
            SuiteOptions opt{seed, mode == "exact" ? Mode::Exact : Mode::Float, explicit_cases ? cases : 0};
            json props = json::array();
            bool pass = true;
            for (const auto& r : run_all_suites(opt)) {
                pass = pass && r.pass();
                props.push_back(result_json(r));
            }
            cmd.result = json{{"seed", seed}, {"mode", mode_name(opt.mode)}, {"pass", pass}, {"properties", props}};
            cmd.status = pass ? kOk : kCheckFailed;
        }
    } catch (const Error& e) {
        out << dump(error_json(e.code(), e.what(), e.location()));
        return kInputError;
    }

    std::string text = dump(cmd.result);
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream f(output);
        if (!(f << text)) {
            out << dump(error_json("io_error", "cannot write '" + output + "'", "--output"));
            return kInputError;
        }
    }
    return cmd.status;
}

} // namespace alphajet::cli
