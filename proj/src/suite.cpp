#include "alphajet/suite.hpp"

#include "alphajet/error.hpp"
#include "alphajet/int_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace alphajet {

void Outcome::check(bool good, double dev, const std::string& what)
{
    if (std::isnan(dev))
        dev = std::numeric_limits<double>::infinity();
    deviation = std::max(deviation, dev);
    if (!good && ok) {
        ok = false;
        detail = what;
    }
}

namespace {

constexpr double kTol = kDefaultTolerance;

std::string num(double v)
{
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::size_t dim(Rng& rng, std::size_t max = 3)
{
    return static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(max)));
}

int order(Rng& rng, int max = 4)
{
    return static_cast<int>(rng.uniform_int(0, max));
}

void compare(Outcome& o, const AlgebraElement& a, const AlgebraElement& b, Mode mode, const char* what)
{
    double d = max_abs_difference(a, b);
    bool good = mode == Mode::Exact ? a == b : d <= kTol;
    o.check(good, d, good ? std::string() : std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
}

void compare(Outcome& o, double a, double b, Mode mode, const char* what)
{
    double d = std::abs(a - b);
    bool good = mode == Mode::Exact ? a == b : d <= kTol;
    o.check(good, d, good ? std::string() : std::string(what) + ": " + num(a) + " vs " + num(b));
}

void compare(Outcome& o, const AlphaJet& a, const AlphaJet& b, Mode mode, const char* what)
{
    double d = max_abs_difference(a, b);
    bool good = mode == Mode::Exact ? a == b : d <= kTol;
    o.check(good, d, good ? std::string() : std::string(what) + ": deviation " + num(d));
}

void compare(Outcome& o, const MapJet& a, const MapJet& b, Mode mode, const char* what)
{
    double d = max_abs_difference(a, b);
    bool good = mode == Mode::Exact ? a == b : d <= kTol;
    o.check(good, d, good ? std::string() : std::string(what) + ": deviation " + num(d));
}

double vec_diff(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Images of degree >= s where s * (smallest degree of a source ideal
// generator) exceeds the target order, so every relation goes to zero.
AlgebraMorphism random_morphism(Rng& rng, const AlgebraSpec& source, const AlgebraSpec& target, Mode mode)
{
    int dmin = source.order() + 1;
    for (const auto& g : source.ideal_generators())
        dmin = std::min(dmin, g.degree());
    int s = std::max(1, (target.order() + dmin) / dmin);
    std::vector<AlgebraElement> images;
    for (std::size_t i = 0; i < source.num_generators(); ++i) {
        AlgebraElement::Terms t;
        for (const auto& m : target.basis())
            if (m.degree() >= s && rng.coin(0.6))
                t[m] = gen::coefficient(rng, mode);
        images.emplace_back(target, t);
    }
    return AlgebraMorphism(source, target, std::move(images));
}

MapJet jet_at(Rng& rng, std::vector<double> x, std::size_t target_dim, int k, Mode mode)
{
    AlgebraSpec a = AlgebraSpec::jet_algebra(x.size(), k);
    std::vector<AlgebraElement> comps;
    for (std::size_t j = 0; j < target_dim; ++j)
        comps.push_back(gen::element(rng, a, mode));
    return MapJet(std::move(x), k, std::move(comps));
}

// prod_i (y_i - x_i)^{e_i} for a random exponent tuple of the given degree
SmoothExpr shifted_monomial(Rng& rng, std::span<const double> x, int degree)
{
    auto candidates = monomials_of_degree(x.size(), degree);
    const Monomial& m = candidates[rng.index(candidates.size())];
    SmoothExpr r = SmoothExpr::constant(1.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (m[i] > 0)
            r = r * pow(SmoothExpr::variable(i) - SmoothExpr::constant(x[i]), m[i]);
    return r;
}

SmoothMap add_to_component(const SmoothMap& phi, std::size_t j, const SmoothExpr& extra)
{
    auto comps = phi.components();
    comps[j] = comps[j] + extra;
    return SmoothMap(phi.arity(), std::move(comps));
}

AlphaJet sample_jet(Rng& rng, const AlgebraSpec& a, std::size_t m, std::size_t d, Mode mode)
{
    return gen::alpha_jet(rng, a, m, d, mode);
}

// Reference evaluation in extended precision for the finite differences, so
// that round-off stays far below the truncation error of the stencil.
long double eval_ld(const SmoothExpr& f, std::span<const long double> y)
{
    using Op = SmoothExpr::Op;
    auto a = [&](std::size_t i) { return eval_ld(f.args()[i], y); };
    switch (f.op()) {
    case Op::Const: return f.value();
    case Op::Var: return y[f.var_index()];
    case Op::Add: return a(0) + a(1);
    case Op::Sub: return a(0) - a(1);
    case Op::Mul: return a(0) * a(1);
    case Op::Div: return a(0) / a(1);
    case Op::Neg: return -a(0);
    case Op::Pow: {
        long double b = a(0);
        int e = f.exponent();
        long double r = 1.0L;
        for (int i = 0; i < std::abs(e); ++i)
            r *= b;
        return e < 0 ? 1.0L / r : r;
    }
    case Op::Exp: return std::exp(a(0));
    case Op::Log: return std::log(a(0));
    case Op::Sin: return std::sin(a(0));
    case Op::Cos: return std::cos(a(0));
    case Op::Sqrt: return std::sqrt(a(0));
    }
    return 0.0L;
}

// ---------------------------------------------------------------------------
// weil_algebra
// ---------------------------------------------------------------------------

using Elements = std::vector<AlgebraElement>;

Elements three(Rng& rng, Mode mode)
{
    AlgebraSpec s = gen::spec(rng, 3, 4, true);
    return {gen::element(rng, s, mode), gen::element(rng, s, mode), gen::element(rng, s, mode)};
}

Outcome add_associative(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    Outcome o;
    compare(o, (e[0] + e[1]) + e[2], e[0] + (e[1] + e[2]), mode, "(a+b)+c vs a+(b+c)");
    return o;
}

Outcome add_commutative(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    Outcome o;
    compare(o, e[0] + e[1], e[1] + e[0], mode, "a+b vs b+a");
    return o;
}

Outcome mul_associative(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    Outcome o;
    compare(o, (e[0] * e[1]) * e[2], e[0] * (e[1] * e[2]), mode, "(ab)c vs a(bc)");
    return o;
}

Outcome mul_commutative(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    Outcome o;
    compare(o, e[0] * e[1], e[1] * e[0], mode, "ab vs ba");
    return o;
}

Outcome distributive(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    Outcome o;
    compare(o, e[0] * (e[1] + e[2]), e[0] * e[1] + e[0] * e[2], mode, "a(b+c) vs ab+ac");
    compare(o, (e[0] + e[1]) * e[2], e[0] * e[2] + e[1] * e[2], mode, "(a+b)c vs ac+bc");
    return o;
}

Outcome unit_law(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    const AlgebraElement one = AlgebraElement::one(e[0].spec());
    Outcome o;
    compare(o, one * e[0], e[0], mode, "1a vs a");
    compare(o, e[0] * one, e[0], mode, "a1 vs a");
    compare(o, e[0] + AlgebraElement(e[0].spec()), e[0], mode, "a+0 vs a");
    return o;
}

Outcome augmentation_morphism(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    Outcome o;
    compare(o, augmentation(AlgebraElement::one(e[0].spec())), 1.0, Mode::Exact, "aug(1)");
    compare(o, augmentation(e[0] * e[1]), augmentation(e[0]) * augmentation(e[1]), mode, "aug(ab)");
    compare(o, augmentation(e[0] + e[1]), augmentation(e[0]) + augmentation(e[1]), mode, "aug(a+b)");
    return o;
}

Outcome ideal_decomposition(Rng& rng, std::size_t, Mode mode)
{
    auto e = three(rng, mode);
    const AlgebraElement& a = e[0];
    AlgebraElement nu = maximal_ideal_part(a);
    Outcome o;
    compare(o, augmentation(nu), 0.0, Mode::Exact, "aug of maximal-ideal part");
    compare(o, AlgebraElement::constant(a.spec(), augmentation(a)) + nu, a, Mode::Exact, "aug(a)1 + nu vs a");
    return o;
}

Outcome morphism_preserves_operations(Rng& rng, std::size_t, Mode mode)
{
    AlgebraSpec src = gen::spec(rng, 3, 4, true);
    AlgebraSpec dst = gen::spec(rng, 3, 4, true);
    AlgebraMorphism kappa = random_morphism(rng, src, dst, mode);
    AlgebraElement a = gen::element(rng, src, mode);
    AlgebraElement b = gen::element(rng, src, mode);
    Outcome o;
    compare(o, kappa(AlgebraElement::one(src)), AlgebraElement::one(dst), Mode::Exact, "k(1)");
    compare(o, kappa(a + b), kappa(a) + kappa(b), mode, "k(a+b)");
    compare(o, kappa(a * b), kappa(a) * kappa(b), mode, "k(ab)");
    return o;
}

Outcome morphism_compose_associative(Rng& rng, std::size_t, Mode mode)
{
    std::vector<AlgebraSpec> s;
    for (int i = 0; i < 4; ++i)
        s.push_back(gen::spec(rng, 3, 4, true));
    AlgebraMorphism k1 = random_morphism(rng, s[0], s[1], mode);
    AlgebraMorphism k2 = random_morphism(rng, s[1], s[2], mode);
    AlgebraMorphism k3 = random_morphism(rng, s[2], s[3], mode);
    AlgebraMorphism left = morphism_compose(k3, morphism_compose(k2, k1));
    AlgebraMorphism right = morphism_compose(morphism_compose(k3, k2), k1);
    Outcome o;
    for (std::size_t i = 0; i < left.images().size(); ++i)
        compare(o, left.images()[i], right.images()[i], mode, "generator image");
    AlgebraElement a = gen::element(rng, s[0], mode);
    compare(o, left(a), k3(k2(k1(a))), mode, "composite applied");
    return o;
}

// case i enumerates (n, k) with n <= 3, k <= 4
std::pair<std::size_t, int> grid(std::size_t i)
{
    return {i / 5 + 1, static_cast<int>(i % 5)};
}

Outcome nilpotency(Rng& rng, std::size_t i, Mode mode)
{
    auto [n, k] = grid(i);
    AlgebraSpec a(n, k);
    Outcome o;
    for (const auto& b : a.basis()) {
        if (b.is_one())
            continue;
        AlgebraElement e = pow(AlgebraElement(a, {{b, 1.0}}), static_cast<unsigned>(k + 1));
        o.check(e.is_zero(), e.max_abs_coefficient(), b.to_string() + "^(k+1) = " + e.to_string());
    }
    AlgebraElement nu = gen::ideal_element(rng, a, mode);
    AlgebraElement e = pow(nu, static_cast<unsigned>(k + 1));
    o.check(e.is_zero(), e.max_abs_coefficient(), "random maximal-ideal element to the k+1 is " + e.to_string());
    return o;
}

// counts exponent tuples in [0, k]^n of degree <= k divisible by no relation
std::size_t brute_force_dim(std::size_t n, int k, const std::vector<Monomial>& relations)
{
    std::size_t count = 0;
    std::vector<int> e(n, 0);
    while (true) {
        int deg = 0;
        for (int v : e)
            deg += v;
        if (deg <= k) {
            Monomial m(e);
            if (std::none_of(relations.begin(), relations.end(), [&](const Monomial& r) { return r.divides(m); }))
                ++count;
        }
        std::size_t j = 0;
        while (j < n && e[j] == k)
            e[j++] = 0;
        if (j == n)
            break;
        ++e[j];
    }
    return count;
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Outcome dimension(Rng& rng, std::size_t i, Mode)
{
    auto [n, k] = grid(i);
    Outcome o;
    std::size_t dim0 = algebra_dim(AlgebraSpec(n, k));
    std::size_t brute = brute_force_dim(n, k, {});
    o.check(dim0 == brute, std::abs(static_cast<double>(dim0) - static_cast<double>(brute)),
            "dim " + std::to_string(dim0) + " vs enumeration " + std::to_string(brute));
    std::size_t b = binomial(n + static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    o.check(dim0 == b, 0.0, "dim " + std::to_string(dim0) + " vs binomial " + std::to_string(b));

    // with random relations
    std::vector<Monomial> rel;
    if (k >= 1) {
        auto candidates = monomials_up_to(n, k);
        for (int r = 0; r < 2; ++r) {
            const Monomial& m = candidates[1 + rng.index(candidates.size() - 1)];
            rel.push_back(m);
        }
    }
    std::size_t dim1 = algebra_dim(AlgebraSpec(n, k, rel));
    std::size_t brute1 = brute_force_dim(n, k, rel);
    o.check(dim1 == brute1, std::abs(static_cast<double>(dim1) - static_cast<double>(brute1)),
            "dim with relations " + std::to_string(dim1) + " vs enumeration " + std::to_string(brute1));
    return o;
}

// ---------------------------------------------------------------------------
// smooth_expr
// ---------------------------------------------------------------------------

Outcome taylor_finite_differences(Rng& rng, std::size_t, Mode)
{
    const std::size_t d = dim(rng);
    SmoothExpr f = gen::smooth(rng, d);
    std::vector<double> p = gen::point(rng, d, Mode::Float);
    AlgebraElement t = taylor(f, p, 2);

    constexpr long double h = 1e-4L;
    std::vector<long double> base(p.begin(), p.end());
    auto at = [&](std::size_t i, int si, std::size_t j, int sj) {
        std::vector<long double> y = base;
        y[i] += si * h;
        y[j] += sj * h;
        return eval_ld(f, y);
    };
    const long double f0 = eval_ld(f, base);

    Outcome o;
    auto expect = [&](const Monomial& m, long double fd) {
        double got = t.coefficient(m);
        double ref = static_cast<double>(fd);
        double err = std::abs(got - ref);
        o.check(err <= 1e-6 * std::max(1.0, std::abs(ref)), err,
                "coefficient of " + m.to_string() + ": " + num(got) + " vs finite difference " + num(ref) + " in " +
                    f.to_string());
    };
    expect(Monomial::one(d), f0);
    for (std::size_t i = 0; i < d; ++i) {
        Monomial xi = Monomial::generator(d, i);
        long double fp = at(i, 1, i, 0);
        long double fm = at(i, -1, i, 0);
        expect(xi, (fp - fm) / (2 * h));
        expect(xi * xi, (fp - 2 * f0 + fm) / (h * h) / 2);
        for (std::size_t j = i + 1; j < d; ++j) {
            long double mixed = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4 * h * h);
            expect(xi * Monomial::generator(d, j), mixed);
        }
    }
    return o;
}

SmoothExpr test_function(Rng& rng, std::size_t d, Mode mode)
{
    return mode == Mode::Exact ? gen::polynomial(rng, d, 3, Mode::Exact) : gen::smooth(rng, d);
}

Outcome taylor_product(Rng& rng, std::size_t, Mode mode)
{
    const std::size_t d = dim(rng);
    const int k = order(rng);
    SmoothExpr f = test_function(rng, d, mode);
    SmoothExpr g = test_function(rng, d, mode);
    std::vector<double> p = gen::point(rng, d, mode);
    Outcome o;
    compare(o, taylor(f * g, p, k), taylor(f, p, k) * taylor(g, p, k), mode, "taylor(fg) vs taylor(f)taylor(g)");
    return o;
}

Outcome taylor_order_zero(Rng& rng, std::size_t, Mode mode)
{
    const std::size_t d = dim(rng);
    SmoothExpr f = test_function(rng, d, mode);
    std::vector<double> p = gen::point(rng, d, mode);
    AlgebraElement t = taylor(f, p, 0);
    Outcome o;
    compare(o, t, AlgebraElement::constant(t.spec(), eval(f, p)), mode, "taylor(f, p, 0) vs f(p)");
    return o;
}

// ---------------------------------------------------------------------------
// map_jet
// ---------------------------------------------------------------------------

Outcome jet_chain_rule(Rng& rng, std::size_t, Mode mode)
{
    const std::size_t m = dim(rng), d = dim(rng), e = dim(rng);
    const int k = order(rng);
    SmoothMap phi = gen::polynomial_map(rng, m, d, 2, mode);
    SmoothMap psi = gen::polynomial_map(rng, d, e, 2, mode);
    std::vector<double> x = gen::point(rng, m, mode);
    MapJet lhs = jet_compose(taylor_map(psi, phi(x), k), taylor_map(phi, x, k));
    MapJet rhs = taylor_map(compose(psi, phi), x, k);
    Outcome o;
    compare(o, lhs, rhs, mode, "jet_compose vs jet of composite");
    return o;
}

Outcome jet_compose_associative(Rng& rng, std::size_t, Mode mode)
{
    const int k = order(rng);
    MapJet j1 = gen::map_jet(rng, dim(rng), dim(rng), k, mode);
    MapJet j2 = jet_at(rng, j1.target_point(), dim(rng), k, mode);
    MapJet j3 = jet_at(rng, j2.target_point(), dim(rng), k, mode);
    Outcome o;
    compare(o, jet_compose(j3, jet_compose(j2, j1)), jet_compose(jet_compose(j3, j2), j1), mode,
            "j3(j2 j1) vs (j3 j2)j1");
    return o;
}

Outcome jet_equivalence(Rng& rng, std::size_t, Mode mode)
{
    const std::size_t m = dim(rng), d = dim(rng);
    const int k = order(rng);
    std::vector<double> x = gen::point(rng, m, mode);
    SmoothMap phi1 = gen::polynomial_map(rng, m, d, 2, mode);

    // adds c (y - x)^e to one component: equivalent iff |e| = k + 1
    auto perturb = [&](bool equivalent) {
        int degree = equivalent ? k + 1 : static_cast<int>(rng.uniform_int(0, k));
        double c = static_cast<double>(rng.uniform_int(1, 3)) * (rng.coin() ? 1 : -1);
        return add_to_component(phi1, rng.index(d), SmoothExpr::constant(c) * shifted_monomial(rng, x, degree));
    };
    const bool eq2 = rng.coin(), eq3 = rng.coin();
    SmoothMap phi2 = perturb(eq2);
    SmoothMap phi3 = perturb(eq3);

    Outcome o;
    auto e = [&](const SmoothMap& a, const SmoothMap& b) { return jets_equivalent(a, b, x, k); };
    o.check(e(phi1, phi1) && e(phi2, phi2), 0.0, "not reflexive");
    o.check(e(phi1, phi2) == eq2, 0.0, eq2 ? "order > k perturbation changed the jet" : "order <= k perturbation missed");
    o.check(e(phi1, phi3) == eq3, 0.0, eq3 ? "order > k perturbation changed the jet" : "order <= k perturbation missed");
    o.check(e(phi2, phi3) == e(phi3, phi2), 0.0, "not symmetric");
    o.check(!(e(phi1, phi2) && e(phi2, phi3)) || e(phi1, phi3), 0.0, "not transitive");
    return o;
}

// ---------------------------------------------------------------------------
// alpha_jet
// ---------------------------------------------------------------------------

struct JetCase
{
    AlphaJet u;
    std::size_t d;
};

JetCase random_case(Rng& rng, Mode mode)
{
    AlgebraSpec a = gen::spec(rng, 3, 4, true);
    std::size_t m = dim(rng), d = dim(rng);
    return {sample_jet(rng, a, m, d, mode), d};
}

Outcome alpha_morphism_law(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    SmoothExpr f = test_function(rng, d, mode);
    SmoothExpr g = test_function(rng, d, mode);
    Outcome o;
    compare(o, eval(u, f * g), eval(u, f) * eval(u, g), mode, "u(fg) vs u(f)u(g)");
    compare(o, eval(u, f + g), eval(u, f) + eval(u, g), mode, "u(f+g) vs u(f)+u(g)");
    compare(o, eval(u, SmoothExpr::constant(1.0)), AlgebraElement::one(u.algebra()), Mode::Exact, "u(1) vs 1");
    return o;
}

Outcome alpha_target_law(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    SmoothExpr f = test_function(rng, d, mode);
    Outcome o;
    compare(o, augmentation(eval(u, f)), eval(f, target(u)), mode, "aug(u(f)) vs f(target)");
    return o;
}

Outcome alpha_representation(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    Outcome o;
    for (std::size_t j = 0; j < d; ++j)
        compare(o, eval(u, SmoothExpr::variable(j)),
                AlgebraElement::constant(u.algebra(), u.target_point()[j]) + u.images()[j], Mode::Exact,
                "u(y_j) vs p_j + image_j");
    return o;
}

Outcome pushforward_identity(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    Outcome o;
    compare(o, pushforward(SmoothMap::identity(d), u), u, Mode::Exact, "A(id)u vs u");
    return o;
}

Outcome pushforward_composition(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    const std::size_t e = dim(rng), q = dim(rng);
    SmoothMap phi = gen::polynomial_map(rng, d, e, 2, mode);
    SmoothMap psi = gen::polynomial_map(rng, e, q, 2, mode);
    Outcome o;
    compare(o, pushforward(compose(psi, phi), u), pushforward(psi, pushforward(phi, u)), mode,
            "A(psi phi)u vs A(psi)A(phi)u");
    return o;
}

Outcome pushforward_pullback(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    const std::size_t e = dim(rng);
    SmoothMap phi = gen::polynomial_map(rng, d, e, 2, mode);
    SmoothExpr g = test_function(rng, e, mode);
    Outcome o;
    compare(o, eval(pushforward(phi, u), g), eval(u, g.substitute(phi.components())), mode,
            "(A(phi)u)(g) vs u(g phi)");
    return o;
}

Outcome lab_naturality(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    AlgebraSpec b = gen::spec(rng, 3, 4, true);
    AlgebraMorphism kappa = random_morphism(rng, u.algebra(), b, mode);
    std::vector<double> x2 = gen::point(rng, dim(rng), mode);
    SmoothMap phi = gen::polynomial_map(rng, d, dim(rng), 2, mode);
    Outcome o;
    compare(o, lab_morphism_apply(kappa, x2, pushforward(phi, u)), pushforward(phi, lab_morphism_apply(kappa, x2, u)),
            mode, "k after A(phi) vs B(phi) after k");
    return o;
}

Outcome chi_roundtrip_case(Rng& rng, std::size_t, Mode mode)
{
    const std::size_t m = dim(rng), d = dim(rng);
    const int k = order(rng);
    MapJet j = gen::map_jet(rng, m, d, k, mode);
    AlphaJet u = sample_jet(rng, AlgebraSpec::jet_algebra(m, k), m, d, mode);
    Outcome o;
    compare(o, chi_inverse(chi(j)), j, Mode::Exact, "chi_inverse(chi(j)) vs j");
    compare(o, chi(chi_inverse(u)), u, Mode::Exact, "chi(chi_inverse(u)) vs u");
    return o;
}

Outcome chi_taylor_oracle(Rng& rng, std::size_t, Mode)
{
    const std::size_t m = dim(rng), d = dim(rng);
    const int k = order(rng);
    SmoothMap phi = gen::polynomial_map(rng, m, d, 2, Mode::Exact);
    SmoothExpr f = gen::polynomial(rng, d, 2, Mode::Exact);
    std::vector<double> x = gen::point(rng, m, Mode::Exact);

    AlgebraElement got = eval(chi(taylor_map(phi, x, k)), f);

    std::vector<oracle::IntPoly> comps;
    for (const auto& c : phi.components())
        comps.push_back(*oracle::to_int_poly(c, m));
    std::vector<std::int64_t> shift(x.begin(), x.end());
    oracle::IntPoly ref = oracle::to_int_poly(f, d)->compose(comps).shifted(shift).truncated(k);

    Outcome o;
    std::size_t matched = 0;
    for (const auto& [e, c] : ref.terms()) {
        double g = got.coefficient(Monomial(e));
        auto cd = static_cast<double>(c);
        o.check(g == cd, std::abs(g - cd), "coefficient of " + Monomial(e).to_string() + ": " + num(g) + " vs " + num(cd));
        ++matched;
    }
    o.check(got.terms().size() == matched, 0.0, "extra terms in " + got.to_string());
    return o;
}

Outcome chi_naturality(Rng& rng, std::size_t, Mode mode)
{
    const std::size_t m = dim(rng), d = dim(rng);
    const int k = order(rng);
    AlphaJet u = sample_jet(rng, AlgebraSpec::jet_algebra(m, k), m, d, mode);
    SmoothMap phi = gen::polynomial_map(rng, d, dim(rng), 2, mode);
    Outcome o;
    compare(o, chi(jet_compose(taylor_map(phi, target(u), k), chi_inverse(u))), pushforward(phi, u), mode,
            "chi(j(phi) chi^-1(u)) vs A(phi)u");
    return o;
}

Outcome alpha_locality(Rng& rng, std::size_t, Mode mode)
{
    auto [u, d] = random_case(rng, mode);
    const int k = u.algebra().order();
    SmoothExpr f = test_function(rng, d, mode);
    SmoothExpr h = SmoothExpr::constant(2.0) + test_function(rng, d, mode);
    double c = static_cast<double>(rng.uniform_int(1, 3));
    SmoothExpr g = f + SmoothExpr::constant(c) * shifted_monomial(rng, target(u), k + 1) * h;
    AlgebraElement a = eval(u, f);
    AlgebraElement b = eval(u, g);
    Outcome o;
    double dev = max_abs_difference(a, b);
    o.check(dev <= kTol, dev, "u(f) = " + a.to_string() + " but u(g) = " + b.to_string());
    return o;
}

// ---------------------------------------------------------------------------
// bundle_charts
// ---------------------------------------------------------------------------

AlgebraSpec fibre(Rng& rng)
{
    return gen::spec(rng, 2, 3, true, 1);
}

std::vector<AlphaJet> samples(Rng& rng, const AlgebraSpec& a, std::size_t m, std::size_t d, Mode mode,
                              std::size_t count = 20)
{
    std::vector<AlphaJet> out;
    for (std::size_t s = 0; s < count; ++s)
        out.push_back(sample_jet(rng, a, m, d, mode));
    return out;
}

ChartTransition some_transition(Rng& rng, std::size_t i, const AlgebraSpec& a, std::size_t m, std::size_t d,
                                Mode mode)
{
    return i % 2 == 0 ? gen::linear_transition(rng, a, m, d, mode) : gen::nonlinear_transition(rng, a, m, d);
}

Outcome family_automorphism(Rng& rng, std::size_t i, Mode mode)
{
    AlgebraSpec a = gen::spec(rng, 3, 3, true);
    std::size_t m = dim(rng);
    AutomorphismFamily f = i % 2 == 0 ? gen::smooth_family(rng, a, m) : gen::constant_family(rng, a, m, mode);
    Outcome o;
    for (int s = 0; s < 5; ++s) {
        std::vector<double> x = gen::point(rng, m, Mode::Float);
        bool good = false;
        try {
            good = is_automorphism(family_at(f, x));
        } catch (const NotAutomorphism&) {
        }
        o.check(good, 0.0, "not an automorphism at a sampled base point");
    }
    return o;
}

Outcome bundle_equivariance(Rng& rng, std::size_t i, Mode mode)
{
    AlgebraSpec a = fibre(rng);
    std::size_t m = dim(rng, 2), d = dim(rng, 2);
    ChartTransition t = some_transition(rng, i, a, m, d, mode);
    AlphaJet u = sample_jet(rng, a, m, d, i % 2 == 0 ? mode : Mode::Float);
    AlphaJet v = transition_apply(t, u);
    Outcome o;
    double ds = vec_diff(source(v), t.base_map(source(u)));
    double dt = vec_diff(target(v), t.fiber_map(target(u)));
    o.check(ds <= kTol, ds, "source(T u) vs base_map(source u)");
    o.check(dt <= kTol, dt, "target(T u) vs fiber_map(target u)");
    return o;
}

Outcome fiberwise_commutation(Rng& rng, std::size_t i, Mode mode)
{
    AlgebraSpec a = gen::spec(rng, 3, 4, true);
    std::size_t m = dim(rng), d = dim(rng);
    const bool smooth = mode == Mode::Float && i % 2 == 1;
    AutomorphismFamily f = smooth ? gen::smooth_family(rng, a, m) : gen::constant_family(rng, a, m, mode);
    AlphaJet u = sample_jet(rng, a, m, d, mode);
    SmoothMap phi = gen::polynomial_map(rng, d, dim(rng), 2, mode);
    const std::vector<double>& x = source(u);
    Outcome o;
    compare(o, family_action(f, x, pushforward(phi, u)), pushforward(phi, family_action(f, x, u)), mode,
            "Xi after A(phi) vs A(phi) after Xi");
    return o;
}

struct Triple
{
    ChartTransition t21, t32, t31;
    std::vector<AlphaJet> samples;
};

Triple composable_triple(Rng& rng, std::size_t i, Mode mode)
{
    AlgebraSpec a = fibre(rng);
    std::size_t m = dim(rng, 2), d = dim(rng, 2);
    ChartTransition t21 = some_transition(rng, i, a, m, d, mode);
    ChartTransition t32 = some_transition(rng, i, a, m, d, mode);
    ChartTransition t31 = transition_compose(t32, t21);
    return {t21, t32, t31, samples(rng, a, m, d, i % 2 == 0 ? mode : Mode::Float)};
}

Outcome bundle_cocycle(Rng& rng, std::size_t i, Mode mode)
{
    Triple t = composable_triple(rng, i, mode);
    CheckReport r = cocycle_check(t.t21, t.t32, t.t31, t.samples);
    Outcome o;
    o.check(r.pass, r.max_abs_deviation, "cocycle fails with deviation " + num(r.max_abs_deviation));
    return o;
}

ChartTransition perturbed(const ChartTransition& t, std::size_t which)
{
    const SmoothExpr eps = SmoothExpr::constant(1e-3);
    switch (which % 3) {
    case 0: return {add_to_component(t.base_map, 0, eps), t.fiber_map, t.family};
    case 1: return {t.base_map, add_to_component(t.fiber_map, 0, eps), t.family};
    default: {
        auto images = t.family.generator_images();
        const AlgebraSpec& a = t.family.algebra();
        images[0].push_back({Monomial::generator(a.num_generators(), 0), eps});
        return {t.base_map, t.fiber_map, AutomorphismFamily(a, t.family.base_arity(), std::move(images))};
    }
    }
}

Outcome bundle_cocycle_perturbed(Rng& rng, std::size_t i, Mode mode)
{
    Triple t = composable_triple(rng, i, mode);
    CheckReport r = cocycle_check(t.t21, t.t32, perturbed(t.t31, i / 2), t.samples);
    Outcome o;
    o.check(!r.pass, 0.0, "perturbation by 1e-3 not detected (deviation " + num(r.max_abs_deviation) + ")");
    return o;
}

Outcome double_trivialization(Rng& rng, std::size_t, Mode mode)
{
    AlgebraSpec a = fibre(rng);
    std::size_t m = dim(rng, 3), d = dim(rng, 3);
    ChartTransition t = gen::linear_transition(rng, a, m, d, mode);
    auto s = samples(rng, a, m, d, mode);
    CheckReport r = double_trivialization_check(t, s);
    Outcome o;
    o.check(r.pass && r.max_abs_deviation < 1e-9, r.max_abs_deviation,
            "double trivialization fails (" + r.failing_check + ") with deviation " + num(r.max_abs_deviation));
    return o;
}

Outcome doublecheck_detects_mixing(Rng& rng, std::size_t i, Mode mode)
{
    AlgebraSpec a = fibre(rng);
    std::size_t m = dim(rng, 2), d = dim(rng, 2);
    ChartTransition t = some_transition(rng, i, a, m, d, mode);
    auto s = samples(rng, a, m, d, Mode::Float);
    // a "chart" whose base coordinate leaks the fibre point
    ChartMap chart = [&t](const AlphaJet& u) {
        AlphaJet v = transition_apply(t, u);
        std::vector<double> x = v.base_point();
        x[0] += 0.1 * (1.0 + u.target_point()[0] * u.target_point()[0]);
        return AlphaJet(v.algebra(), std::move(x), v.target_point(), v.images());
    };
    CheckReport r = double_trivialization_check(chart, t.base_map, t.fiber_map, s);
    Outcome o;
    o.check(!r.pass && r.failing_check == "projections", 0.0, "fibre-dependent base coordinate not detected");
    return o;
}

Outcome smoothness(Rng& rng, std::size_t i, Mode mode)
{
    AlgebraSpec a = fibre(rng);
    std::size_t m = dim(rng, 2), d = dim(rng, 2);
    const bool linear = i % 2 == 1;
    ChartTransition t = linear ? gen::linear_transition(rng, a, m, d, mode) : gen::nonlinear_transition(rng, a, m, d);
    AlphaJet u = sample_jet(rng, a, m, d, Mode::Float);
    std::vector<double> dir = gen::point(rng, m, Mode::Float);
    dir[0] = dir[0] >= 0 ? dir[0] + 0.5 : dir[0] - 0.5;
    SmoothnessProbe p = smoothness_probe(t, u, dir);
    Outcome o;
    std::string ratios;
    for (double r : p.ratios)
        ratios += " " + num(r);
    o.check(p.pass && p.affine == linear, 0.0,
            std::string(linear ? "affine transition" : "nonlinear transition") + " probe ratios:" + ratios +
                (p.affine ? " (affine)" : ""));
    return o;
}

Outcome diffeomorphism(Rng& rng, std::size_t, Mode)
{
    AlgebraSpec a = fibre(rng);
    std::size_t m = dim(rng), d = dim(rng);
    ChartTransition t = gen::nonlinear_transition(rng, a, m, d);
    std::vector<std::vector<double>> xs, ps;
    for (int s = 0; s < 10; ++s) {
        xs.push_back(gen::point(rng, m, Mode::Float));
        ps.push_back(gen::point(rng, d, Mode::Float));
    }
    CheckReport rb = diffeomorphism_check(t.base_map, xs);
    CheckReport rf = diffeomorphism_check(t.fiber_map, ps);
    Outcome o;
    o.check(rb.pass, rb.max_abs_deviation, "base map round trip misses by " + num(rb.max_abs_deviation));
    o.check(rf.pass, rf.max_abs_deviation, "fibre map round trip misses by " + num(rf.max_abs_deviation));
    return o;
}

std::vector<Property> make_properties()
{
    using F = Outcome (*)(Rng&, std::size_t, Mode);
    std::vector<Property> p;
    auto add = [&](const char* module, const char* name, std::size_t cases, F f, bool fixed = false) {
        p.push_back({module, name, cases, fixed, f});
    };
    add("weil_algebra", "weil.add_associative", 100, add_associative);
    add("weil_algebra", "weil.add_commutative", 100, add_commutative);
    add("weil_algebra", "weil.mul_associative", 100, mul_associative);
    add("weil_algebra", "weil.mul_commutative", 100, mul_commutative);
    add("weil_algebra", "weil.distributive", 100, distributive);
    add("weil_algebra", "weil.unit", 100, unit_law);
    add("weil_algebra", "weil.augmentation_morphism", 100, augmentation_morphism);
    add("weil_algebra", "weil.ideal_decomposition", 100, ideal_decomposition);
    add("weil_algebra", "weil.morphism_preserves_operations", 100, morphism_preserves_operations);
    add("weil_algebra", "weil.morphism_compose_associative", 100, morphism_compose_associative);
    add("weil_algebra", "weil.nilpotency", 15, nilpotency, true);
    add("weil_algebra", "weil.dimension", 15, dimension, true);

    add("smooth_expr", "taylor.finite_differences", 50, taylor_finite_differences);
    add("smooth_expr", "taylor.product", 100, taylor_product);
    add("smooth_expr", "taylor.order_zero", 100, taylor_order_zero);

    add("map_jet", "jet.chain_rule", 100, jet_chain_rule);
    add("map_jet", "jet.compose_associative", 100, jet_compose_associative);
    add("map_jet", "jet.equivalence_relation", 100, jet_equivalence);

    add("alpha_jet", "alphajet.morphism_law", 100, alpha_morphism_law);
    add("alpha_jet", "alphajet.target_law", 100, alpha_target_law);
    add("alpha_jet", "alphajet.representation", 100, alpha_representation);
    add("alpha_jet", "alphajet.locality", 50, alpha_locality);
    add("alpha_jet", "pushforward.identity", 100, pushforward_identity);
    add("alpha_jet", "pushforward.composition", 100, pushforward_composition);
    add("alpha_jet", "pushforward.pullback", 100, pushforward_pullback);
    add("alpha_jet", "lab.naturality", 100, lab_naturality);
    add("alpha_jet", "chi.roundtrip", 100, chi_roundtrip_case);
    add("alpha_jet", "chi.taylor_oracle", 50, chi_taylor_oracle);
    add("alpha_jet", "chi.naturality", 100, chi_naturality);

    add("bundle_charts", "family.automorphism", 100, family_automorphism);
    add("bundle_charts", "bundle.equivariance", 50, bundle_equivariance);
    add("bundle_charts", "bundle.fiberwise_commutation", 100, fiberwise_commutation);
    add("bundle_charts", "bundle.cocycle", 20, bundle_cocycle);
    add("bundle_charts", "bundle.cocycle_perturbed", 20, bundle_cocycle_perturbed);
    add("bundle_charts", "bundle.double_trivialization", 20, double_trivialization);
    add("bundle_charts", "bundle.doublecheck_detects_mixing", 20, doublecheck_detects_mixing);
    add("bundle_charts", "bundle.smoothness_probe", 20, smoothness);
    add("bundle_charts", "bundle.diffeomorphism", 20, diffeomorphism);
    return p;
}

} // namespace

const std::vector<Property>& all_properties()
{
    static const std::vector<Property> props = make_properties();
    return props;
}

const Property& find_property(std::string_view name)
{
    for (const auto& p : all_properties())
        if (p.name == name)
            return p;
    throw InvalidArgument("unknown property '" + std::string(name) + "'");
}

PropertyResult run_property(const Property& p, const SuiteOptions& options)
{
    PropertyResult r;
    r.module = p.module;
    r.name = p.name;
    r.cases = p.fixed || options.cases == 0 ? p.default_cases : options.cases;
    for (std::size_t i = 0; i < r.cases; ++i) {
        Rng rng = Rng::derive(options.seed, p.name, i);
        Outcome o;
        try {
            o = p.run(rng, i, options.mode);
        } catch (const std::exception& e) {
            o.check(false, std::numeric_limits<double>::infinity(), std::string("exception: ") + e.what());
        }
        r.max_abs_deviation = std::max(r.max_abs_deviation, o.deviation);
        if (!o.ok && r.failures++ == 0)
            r.first_failure = "case " + std::to_string(i) + ": " + o.detail;
    }
    return r;
}

std::vector<PropertyResult> run_all_suites(const SuiteOptions& options)
{
    std::vector<PropertyResult> out;
    for (const auto& p : all_properties())
        out.push_back(run_property(p, options));
    return out;
}

} // namespace alphajet
