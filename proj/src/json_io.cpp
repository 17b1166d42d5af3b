#include "alphajet/json_io.hpp"

#include "alphajet/error.hpp"

#include <cmath>

namespace alphajet::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg)
{
    throw InvalidArgument(msg, path.empty() ? "/" : path);
}

const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object())
        bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        bad(path, std::string("missing field '") + key + "'");
    return *it;
}

const json& array_at(const json& j, const std::string& path)
{
    if (!j.is_array())
        bad(path, "expected an array");
    return j;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number())
        bad(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v))
        bad(path, "expected a finite number");
    return v;
}

long long integer(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return j.get<long long>();
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (std::isfinite(v) && v == std::floor(v))
            return static_cast<long long>(v);
    }
    bad(path, "expected an integer");
}

std::size_t count(const json& j, const std::string& path)
{
    long long v = integer(j, path);
    if (v < 0)
        bad(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

Monomial monomial_from_json(const json& j, const std::string& path)
{
    std::vector<int> e;
    for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
        long long v = integer(j[i], path + "/" + std::to_string(i));
        if (v < 0 || v > 1'000'000)
            bad(path + "/" + std::to_string(i), "exponent out of range");
        e.push_back(static_cast<int>(v));
    }
    return Monomial(std::move(e));
}

json monomial_to_json(const Monomial& m)
{
    json a = json::array();
    for (int e : m.exponents())
        a.push_back(e);
    return a;
}

json point_to_json(std::span<const double> p)
{
    json a = json::array();
    for (double v : p)
        a.push_back(v);
    return a;
}

// Library errors raised while building a value are re-tagged with the JSON
// location of the value being built.
template <typename F>
auto located(const std::string& path, F&& build)
{
    try {
        return build();
    } catch (const ParseError&) {
        throw;
    } catch (Error& e) {
        if (e.location().empty())
            e.set_location(path.empty() ? "/" : path);
        throw;
    }
}

const char* op_name(SmoothExpr::Op op)
{
    using Op = SmoothExpr::Op;
    switch (op) {
    case Op::Const: return "const";
    case Op::Var: return "var";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Neg: return "neg";
    case Op::Pow: return "pow";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sqrt: return "sqrt";
    }
    return "";
}

} // namespace

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

json to_json(const AlgebraSpec& spec)
{
    json rel = json::array();
    for (const auto& r : spec.relations())
        rel.push_back(monomial_to_json(r));
    return json{{"n", spec.num_generators()}, {"k", spec.order()}, {"relations", std::move(rel)}};
}

json to_json(const AlgebraElement& a)
{
    json terms = json::array();
    for (const auto& [m, c] : a.terms())
        terms.push_back(json{{"exp", monomial_to_json(m)}, {"coef", c}});
    return json{{"spec", to_json(a.spec())}, {"terms", std::move(terms)}};
}

json to_json(const AlgebraMorphism& kappa)
{
    json images = json::array();
    for (const auto& img : kappa.images())
        images.push_back(to_json(img));
    return json{{"source", to_json(kappa.source())}, {"target", to_json(kappa.target())}, {"images", std::move(images)}};
}

json to_json(const SmoothExpr& f)
{
    using Op = SmoothExpr::Op;
    json j{{"op", op_name(f.op())}};
    switch (f.op()) {
    case Op::Const: j["value"] = f.value(); return j;
    case Op::Var: j["index"] = f.var_index() + 1; return j;
    default: break;
    }
    json args = json::array();
    for (const auto& a : f.args())
        args.push_back(to_json(a));
    j["args"] = std::move(args);
    if (f.op() == Op::Pow)
        j["exponent"] = f.exponent();
    return j;
}

json to_json(const SmoothMap& phi)
{
    json comps = json::array();
    for (const auto& c : phi.components())
        comps.push_back(to_json(c));
    return json{{"arity", phi.arity()}, {"components", std::move(comps)}};
}

json to_json(const MapJet& jet)
{
    json comps = json::array();
    for (const auto& c : jet.components())
        comps.push_back(to_json(c));
    return json{{"x", point_to_json(jet.source_point())}, {"k", jet.order()}, {"components", std::move(comps)}};
}

json to_json(const AlphaJet& u)
{
    json images = json::array();
    for (const auto& img : u.images())
        images.push_back(to_json(img));
    return json{{"algebra", to_json(u.algebra())},
                {"x", point_to_json(u.base_point())},
                {"p", point_to_json(u.target_point())},
                {"images", std::move(images)}};
}

json to_json(const AutomorphismFamily& family)
{
    json images = json::array();
    for (const auto& g : family.generator_images()) {
        json terms = json::array();
        for (const auto& t : g)
            terms.push_back(json{{"exp", monomial_to_json(t.monomial)}, {"coef", to_json(t.coefficient)}});
        images.push_back(std::move(terms));
    }
    return json{{"algebra", to_json(family.algebra())},
                {"base_arity", family.base_arity()},
                {"images", std::move(images)}};
}

json to_json(const ChartTransition& t)
{
    return json{{"base_map", to_json(t.base_map)}, {"fiber_map", to_json(t.fiber_map)}, {"family", to_json(t.family)}};
}

json to_json(const CheckReport& report)
{
    json j{{"pass", report.pass}};
    if (std::isfinite(report.max_abs_deviation))
        j["max_abs_deviation"] = report.max_abs_deviation;
    else
        j["max_abs_deviation"] = nullptr;
    if (report.failing_sample)
        j["failing_sample"] = *report.failing_sample;
    else
        j["failing_sample"] = nullptr;
    if (!report.failing_check.empty())
        j["failing_check"] = report.failing_check;
    return j;
}

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

std::vector<double> point_from_json(const json& j, const std::string& path)
{
    std::vector<double> p;
    for (std::size_t i = 0; i < array_at(j, path).size(); ++i)
        p.push_back(number(j[i], path + "/" + std::to_string(i)));
    return p;
}

AlgebraSpec spec_from_json(const json& j, const std::string& path)
{
    std::size_t n = count(field(j, "n", path), path + "/n");
    long long k = integer(field(j, "k", path), path + "/k");
    if (k > 64)
        bad(path + "/k", "truncation order too large");
    std::vector<Monomial> rel;
    if (j.contains("relations")) {
        const json& r = array_at(j["relations"], path + "/relations");
        for (std::size_t i = 0; i < r.size(); ++i)
            rel.push_back(monomial_from_json(r[i], path + "/relations/" + std::to_string(i)));
    }
    return located(path, [&] { return AlgebraSpec(n, static_cast<int>(k), std::move(rel)); });
}

AlgebraElement element_from_json(const json& j, const std::string& path)
{
    AlgebraSpec spec = spec_from_json(field(j, "spec", path), path + "/spec");
    const json& terms = array_at(field(j, "terms", path), path + "/terms");
    AlgebraElement::Terms t;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string tp = path + "/terms/" + std::to_string(i);
        Monomial m = located(tp, [&] { return monomial_from_json(field(terms[i], "exp", tp), tp + "/exp"); });
        if (m.num_vars() != spec.num_generators())
            bad(tp + "/exp", "exponent tuple length differs from the number of generators");
        t[m] += number(field(terms[i], "coef", tp), tp + "/coef");
    }
    return AlgebraElement(spec, t);
}

AlgebraMorphism morphism_from_json(const json& j, const std::string& path)
{
    AlgebraSpec source = spec_from_json(field(j, "source", path), path + "/source");
    AlgebraSpec target = spec_from_json(field(j, "target", path), path + "/target");
    const json& imgs = array_at(field(j, "images", path), path + "/images");
    std::vector<AlgebraElement> images;
    for (std::size_t i = 0; i < imgs.size(); ++i)
        images.push_back(element_from_json(imgs[i], path + "/images/" + std::to_string(i)));
    return located(path, [&] { return AlgebraMorphism(source, target, std::move(images)); });
}

SmoothExpr expr_from_json(const json& j, const std::string& path)
{
    if (j.is_string()) {
        try {
            return parse_expr(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(e.what(), (path.empty() ? "/" : path) + " " + e.location());
        }
    }
    if (j.is_number())
        return SmoothExpr::constant(number(j, path));
    const std::string op = [&] {
        const json& o = field(j, "op", path);
        if (!o.is_string())
            bad(path + "/op", "expected a string");
        return o.get<std::string>();
    }();
    if (op == "const")
        return SmoothExpr::constant(number(field(j, "value", path), path + "/value"));
    if (op == "var") {
        std::size_t idx = count(field(j, "index", path), path + "/index");
        if (idx == 0)
            bad(path + "/index", "variables are numbered from 1");
        return SmoothExpr::variable(idx - 1);
    }
    const json& args = array_at(field(j, "args", path), path + "/args");
    std::vector<SmoothExpr> a;
    for (std::size_t i = 0; i < args.size(); ++i)
        a.push_back(expr_from_json(args[i], path + "/args/" + std::to_string(i)));
    auto need = [&](std::size_t n) {
        if (a.size() != n)
            bad(path + "/args", "'" + op + "' takes " + std::to_string(n) + " argument(s)");
    };
    if (op == "add") { need(2); return a[0] + a[1]; }
    if (op == "sub") { need(2); return a[0] - a[1]; }
    if (op == "mul") { need(2); return a[0] * a[1]; }
    if (op == "div") { need(2); return a[0] / a[1]; }
    if (op == "neg") { need(1); return -a[0]; }
    if (op == "pow") {
        need(1);
        long long e = integer(field(j, "exponent", path), path + "/exponent");
        if (e < -1'000'000 || e > 1'000'000)
            bad(path + "/exponent", "exponent out of range");
        return pow(a[0], static_cast<int>(e));
    }
    if (op == "exp") { need(1); return exp(a[0]); }
    if (op == "log") { need(1); return log(a[0]); }
    if (op == "sin") { need(1); return sin(a[0]); }
    if (op == "cos") { need(1); return cos(a[0]); }
    if (op == "sqrt") { need(1); return sqrt(a[0]); }
    bad(path + "/op", "unknown op '" + op + "'");
}

SmoothMap map_from_json(const json& j, const std::string& path)
{
    const json& comps = array_at(field(j, "components", path), path + "/components");
    std::vector<SmoothExpr> c;
    std::size_t used = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        c.push_back(expr_from_json(comps[i], path + "/components/" + std::to_string(i)));
        used = std::max(used, c.back().arity());
    }
    std::size_t arity = j.contains("arity") ? count(j["arity"], path + "/arity") : used;
    return located(path, [&] { return SmoothMap(arity, std::move(c)); });
}

MapJet map_jet_from_json(const json& j, const std::string& path)
{
    std::vector<double> x = point_from_json(field(j, "x", path), path + "/x");
    long long k = integer(field(j, "k", path), path + "/k");
    const json& comps = array_at(field(j, "components", path), path + "/components");
    std::vector<AlgebraElement> c;
    for (std::size_t i = 0; i < comps.size(); ++i)
        c.push_back(element_from_json(comps[i], path + "/components/" + std::to_string(i)));
    return located(path, [&] { return MapJet(std::move(x), static_cast<int>(k), std::move(c)); });
}

AlphaJet alpha_jet_from_json(const json& j, const std::string& path)
{
    AlgebraSpec algebra = spec_from_json(field(j, "algebra", path), path + "/algebra");
    std::vector<double> x = point_from_json(field(j, "x", path), path + "/x");
    std::vector<double> p = point_from_json(field(j, "p", path), path + "/p");
    const json& imgs = array_at(field(j, "images", path), path + "/images");
    std::vector<AlgebraElement> images;
    for (std::size_t i = 0; i < imgs.size(); ++i)
        images.push_back(element_from_json(imgs[i], path + "/images/" + std::to_string(i)));
    return located(path, [&] { return AlphaJet(algebra, std::move(x), std::move(p), std::move(images)); });
}

AutomorphismFamily family_from_json(const json& j, const std::string& path)
{
    AlgebraSpec algebra = spec_from_json(field(j, "algebra", path), path + "/algebra");
    std::size_t base_arity = count(field(j, "base_arity", path), path + "/base_arity");
    const json& imgs = array_at(field(j, "images", path), path + "/images");
    std::vector<AutomorphismFamily::GeneratorImage> images;
    for (std::size_t i = 0; i < imgs.size(); ++i) {
        std::string ip = path + "/images/" + std::to_string(i);
        AutomorphismFamily::GeneratorImage g;
        for (std::size_t t = 0; t < array_at(imgs[i], ip).size(); ++t) {
            std::string tp = ip + "/" + std::to_string(t);
            Monomial m = located(tp, [&] { return monomial_from_json(field(imgs[i][t], "exp", tp), tp + "/exp"); });
            g.push_back({std::move(m), expr_from_json(field(imgs[i][t], "coef", tp), tp + "/coef")});
        }
        images.push_back(std::move(g));
    }
    return located(path, [&] { return AutomorphismFamily(algebra, base_arity, std::move(images)); });
}

ChartTransition transition_from_json(const json& j, const std::string& path)
{
    SmoothMap base = map_from_json(field(j, "base_map", path), path + "/base_map");
    SmoothMap fiber = map_from_json(field(j, "fiber_map", path), path + "/fiber_map");
    AutomorphismFamily family = family_from_json(field(j, "family", path), path + "/family");
    return located(path, [&] { return ChartTransition(std::move(base), std::move(fiber), std::move(family)); });
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
}

} // namespace alphajet::io
