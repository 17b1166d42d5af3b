#include "alphajet/bundle_charts.hpp"

#include "alphajet/error.hpp"
#include "alphajet/map_jet.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace alphajet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Truncated polynomial with expression coefficients, reduced modulo the
// algebra's ideal. Used to multiply automorphism families symbolically.
using ExprPoly = std::map<Monomial, SmoothExpr, GradedLexLess>;

ExprPoly expr_one(const AlgebraSpec& spec)
{
    return ExprPoly{{Monomial::one(spec.num_generators()), SmoothExpr::constant(1.0)}};
}

ExprPoly expr_mul(const ExprPoly& a, const ExprPoly& b, const AlgebraSpec& spec)
{
    ExprPoly r;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m = ma * mb;
            if (spec.in_ideal(m))
                continue;
            auto it = r.find(m);
            if (it == r.end())
                r.emplace(std::move(m), ca * cb);
            else
                it->second = it->second + ca * cb;
        }
    }
    return r;
}

void expr_add_scaled(ExprPoly& acc, const ExprPoly& a, const SmoothExpr& scale)
{
    for (const auto& [m, c] : a) {
        auto it = acc.find(m);
        if (it == acc.end())
            acc.emplace(m, scale * c);
        else
            it->second = it->second + scale * c;
    }
}

double max_abs_vec_diff(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        return kInf;
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

// ---------------------------------------------------------------------------
// AutomorphismFamily
// ---------------------------------------------------------------------------

AutomorphismFamily::AutomorphismFamily(AlgebraSpec algebra, std::size_t base_arity, std::vector<GeneratorImage> images)
    : algebra_(std::move(algebra)), base_arity_(base_arity)
{
    const std::size_t n = algebra_.num_generators();
    if (images.size() != n)
        throw InvalidArgument("automorphism family needs " + std::to_string(n) + " generator images, got " +
                              std::to_string(images.size()));
    images_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ExprPoly merged;
        for (auto& term : images[i]) {
            if (term.monomial.num_vars() != n)
                throw InvalidArgument("family term " + term.monomial.to_string() + " has the wrong number of exponents");
            if (term.monomial.is_one())
                throw InvalidArgument("family generator image " + std::to_string(i + 1) +
                                      " has a constant term; images must lie in the maximal ideal");
            if (term.coefficient.arity() > base_arity_)
                throw ArityMismatch("family coefficient " + term.coefficient.to_string() +
                                    " depends on coordinates beyond the " + std::to_string(base_arity_) +
                                    " base coordinates");
            if (algebra_.in_ideal(term.monomial))
                continue;
            auto it = merged.find(term.monomial);
            if (it == merged.end())
                merged.emplace(term.monomial, term.coefficient);
            else
                it->second = it->second + term.coefficient;
        }
        GeneratorImage img;
        for (auto& [m, c] : merged)
            img.push_back({m, c});
        images_.push_back(std::move(img));
    }
}

AutomorphismFamily AutomorphismFamily::identity(const AlgebraSpec& algebra, std::size_t base_arity)
{
    return constant(AlgebraMorphism::identity(algebra), base_arity);
}

AutomorphismFamily AutomorphismFamily::constant(const AlgebraMorphism& kappa, std::size_t base_arity)
{
    if (!(kappa.source() == kappa.target()))
        throw SpecMismatch("an automorphism family needs an endomorphism");
    std::vector<GeneratorImage> images;
    for (const auto& img : kappa.images()) {
        GeneratorImage g;
        for (const auto& [m, c] : img.terms())
            g.push_back({m, SmoothExpr::constant(c)});
        images.push_back(std::move(g));
    }
    return AutomorphismFamily(kappa.source(), base_arity, std::move(images));
}

AlgebraMorphism family_at(const AutomorphismFamily& family, std::span<const double> base_point)
{
    if (base_point.size() != family.base_arity())
        throw ArityMismatch("family of base arity " + std::to_string(family.base_arity()) +
                            " instantiated at a point of dimension " + std::to_string(base_point.size()));
    std::vector<AlgebraElement> images;
    for (const auto& g : family.generator_images()) {
        AlgebraElement::Terms terms;
        for (const auto& t : g)
            terms.emplace(t.monomial, eval(t.coefficient, base_point));
        images.emplace_back(family.algebra(), terms);
    }
    std::optional<AlgebraMorphism> kappa;
    try {
        kappa.emplace(family.algebra(), family.algebra(), std::move(images));
    } catch (const InvalidMorphism& e) {
        throw NotAutomorphism(std::string("family does not give a valid morphism here: ") + e.what());
    }
    if (!is_automorphism(*kappa))
        throw NotAutomorphism("family is not invertible at this base point");
    return *kappa;
}

AlphaJet family_action(const AutomorphismFamily& family, std::span<const double> base_point, const AlphaJet& u)
{
    if (!(u.algebra() == family.algebra()))
        throw SpecMismatch("family acts on a different fibre algebra");
    AlgebraMorphism kappa = family_at(family, base_point);
    return lab_morphism_apply(kappa, u.base_point(), u);
}

// ---------------------------------------------------------------------------
// Transitions
// ---------------------------------------------------------------------------

ChartTransition::ChartTransition(SmoothMap base, SmoothMap fiber, AutomorphismFamily fam)
    : base_map(std::move(base)), fiber_map(std::move(fiber)), family(std::move(fam))
{
    if (base_map.arity() != base_map.output_dim())
        throw ArityMismatch("base chart change must map R^m to R^m");
    if (fiber_map.arity() != fiber_map.output_dim())
        throw ArityMismatch("fibre chart change must map R^d to R^d");
    if (family.base_arity() != base_map.arity())
        throw ArityMismatch("automorphism family base arity differs from the base chart dimension");
}

ChartTransition ChartTransition::identity(const AlgebraSpec& algebra, std::size_t base_dim, std::size_t fiber_dim)
{
    return ChartTransition(SmoothMap::identity(base_dim), SmoothMap::identity(fiber_dim),
                           AutomorphismFamily::identity(algebra, base_dim));
}

AlphaJet transition_apply(const ChartTransition& t, const AlphaJet& u)
{
    if (u.base_point().size() != t.base_map.arity())
        throw ArityMismatch("alpha-jet base dimension differs from the transition's base chart");
    if (u.target_dim() != t.fiber_map.arity())
        throw ArityMismatch("alpha-jet target dimension differs from the transition's fibre chart");
    AlphaJet pushed = pushforward(t.fiber_map, u);
    AlgebraMorphism xi = family_at(t.family, u.base_point());
    return lab_morphism_apply(xi, t.base_map(u.base_point()), pushed);
}

ChartTransition transition_compose(const ChartTransition& second, const ChartTransition& first)
{
    if (!(second.family.algebra() == first.family.algebra()))
        throw SpecMismatch("transition_compose: families act on different algebras");
    const AlgebraSpec& spec = first.family.algebra();
    SmoothMap base = compose(second.base_map, first.base_map);
    SmoothMap fiber = compose(second.fiber_map, first.fiber_map);

    // outer family coefficients re-expressed in the first chart's base coordinates
    std::vector<ExprPoly> outer;
    for (const auto& g : second.family.generator_images()) {
        ExprPoly p;
        for (const auto& t : g)
            p.emplace(t.monomial, t.coefficient.substitute(first.base_map.components()));
        outer.push_back(std::move(p));
    }

    std::vector<AutomorphismFamily::GeneratorImage> images;
    for (const auto& g : first.family.generator_images()) {
        ExprPoly result;
        for (const auto& term : g) {
            ExprPoly product = expr_one(spec);
            for (std::size_t i = 0; i < spec.num_generators(); ++i)
                for (int e = 0; e < term.monomial[i]; ++e)
                    product = expr_mul(product, outer[i], spec);
            expr_add_scaled(result, product, term.coefficient);
        }
        AutomorphismFamily::GeneratorImage img;
        for (auto& [m, c] : result)
            img.push_back({m, c});
        images.push_back(std::move(img));
    }
    return ChartTransition(std::move(base), std::move(fiber),
                           AutomorphismFamily(spec, first.family.base_arity(), std::move(images)));
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

namespace {

void record(CheckReport& r, std::size_t sample, double deviation, double tol, const char* check)
{
    if (std::isnan(deviation))
        deviation = kInf;
    r.max_abs_deviation = std::max(r.max_abs_deviation, deviation);
    if (deviation > tol && r.pass) {
        r.pass = false;
        r.failing_sample = sample;
        r.failing_check = check;
    }
}

// u(y_j) must equal p_j + images[j], and its augmentation p_j.
double representation_deviation(const AlphaJet& u)
{
    double d = 0.0;
    for (std::size_t j = 0; j < u.target_dim(); ++j) {
        AlgebraElement value = eval(u, SmoothExpr::variable(j));
        AlgebraElement expected = AlgebraElement::constant(u.algebra(), u.target_point()[j]) + u.images()[j];
        d = std::max(d, max_abs_difference(value, expected));
        d = std::max(d, std::abs(augmentation(value) - u.target_point()[j]));
    }
    return d;
}

} // namespace

CheckReport cocycle_check(const ChartTransition& t21, const ChartTransition& t32, const ChartTransition& t31,
                          std::span<const AlphaJet> samples, double tol)
{
    CheckReport report;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        double dev = kInf;
        try {
            AlphaJet two_step = transition_apply(t32, transition_apply(t21, samples[s]));
            AlphaJet direct = transition_apply(t31, samples[s]);
            dev = max_abs_difference(two_step, direct);
        } catch (const Error&) {
            // an inapplicable transition counts as a failed sample
        }
        record(report, s, dev, tol, "cocycle");
    }
    return report;
}

CheckReport double_trivialization_check(const ChartMap& chart, const SmoothMap& base_map, const SmoothMap& fiber_map,
                                        std::span<const AlphaJet> samples, double tol)
{
    CheckReport report;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const AlphaJet& u = samples[s];
        double proj = kInf;
        double repr = kInf;
        try {
            AlphaJet v = chart(u);
            proj = std::max(max_abs_vec_diff(source(v), base_map(source(u))),
                            max_abs_vec_diff(target(v), fiber_map(target(u))));
            repr = std::max(representation_deviation(u), representation_deviation(v));
        } catch (const Error&) {
        }
        record(report, s, proj, tol, "projections");
        record(report, s, repr, tol, "representation");
    }
    return report;
}

CheckReport double_trivialization_check(const ChartTransition& t, std::span<const AlphaJet> samples, double tol)
{
    return double_trivialization_check([&t](const AlphaJet& u) { return transition_apply(t, u); }, t.base_map,
                                       t.fiber_map, samples, tol);
}

std::vector<double> chart_coordinates(const AlphaJet& u)
{
    std::vector<double> out(u.base_point().begin(), u.base_point().end());
    out.insert(out.end(), u.target_point().begin(), u.target_point().end());
    for (const auto& img : u.images()) {
        auto d = img.dense();
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

SmoothnessProbe smoothness_probe(const ChartTransition& t, const AlphaJet& u, std::span<const double> direction,
                                 std::vector<double> steps)
{
    if (direction.size() != u.base_point().size())
        throw ArityMismatch("probe direction must have the base dimension");
    if (steps.size() < 3)
        throw InvalidArgument("smoothness probe needs at least three steps");

    SmoothnessProbe probe;
    probe.steps = steps;
    const std::vector<double> f0 = chart_coordinates(transition_apply(t, u));

    std::vector<std::vector<double>> quotients;
    double scale = 1.0;
    for (double h : steps) {
        std::vector<double> x = u.base_point();
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += h * direction[i];
        AlphaJet moved(u.algebra(), std::move(x), u.target_point(), u.images());
        std::vector<double> fh = chart_coordinates(transition_apply(t, moved));
        std::vector<double> q(fh.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = (fh[i] - f0[i]) / h;
            scale = std::max(scale, std::abs(q[i]));
        }
        quotients.push_back(std::move(q));
    }
    for (std::size_t i = 0; i + 1 < quotients.size(); ++i)
        probe.quotient_changes.push_back(max_abs_vec_diff(quotients[i], quotients[i + 1]));

    // below this the quotients agree to round-off: the output is affine in the
    // base point along this direction
    const double floor = 1e-7 * scale;
    probe.affine = std::all_of(probe.quotient_changes.begin(), probe.quotient_changes.end(),
                               [&](double c) { return c <= floor; });
    if (probe.affine) {
        probe.pass = true;
        return probe;
    }
    probe.pass = true;
    for (std::size_t i = 0; i + 1 < probe.quotient_changes.size(); ++i) {
        double ratio = probe.quotient_changes[i] / probe.quotient_changes[i + 1];
        probe.ratios.push_back(ratio);
        double expected = steps[i] / steps[i + 1];
        if (!(ratio >= expected / 2 && ratio <= expected * 2))
            probe.pass = false;
    }
    return probe;
}

// ---------------------------------------------------------------------------
// Numeric inverses
// ---------------------------------------------------------------------------

namespace {

std::optional<double> residual_norm(const SmoothMap& f, std::span<const double> z, std::span<const double> y,
                                    Eigen::VectorXd* residual)
{
    std::vector<double> fz;
    try {
        fz = f(z);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < fz.size(); ++i) {
        double r = y[i] - fz[i];
        if (residual != nullptr)
            (*residual)(static_cast<Eigen::Index>(i)) = r;
        norm = std::max(norm, std::abs(r));
    }
    return norm;
}

} // namespace

std::optional<std::vector<double>> newton_inverse(const SmoothMap& f, std::span<const double> y,
                                                  std::span<const double> guess, double tol, int max_iterations)
{
    const std::size_t n = f.arity();
    if (f.output_dim() != n || y.size() != n || guess.size() != n)
        throw ArityMismatch("newton_inverse needs a square map and matching points");
    const auto N = static_cast<Eigen::Index>(n);

    std::vector<double> z(guess.begin(), guess.end());
    Eigen::VectorXd residual(N);
    auto norm = residual_norm(f, z, y, &residual);
    if (!norm)
        return std::nullopt;

    for (int it = 0; it < max_iterations && *norm > tol; ++it) {
        MapJet jet = taylor_map(f, z, 1);
        Eigen::MatrixXd jac(N, N);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    jet.components()[i].coefficient(Monomial::generator(n, j));
        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        if (!lu.isInvertible())
            return std::nullopt;
        Eigen::VectorXd step = lu.solve(residual);

        // backtrack until the residual decreases
        double damping = 1.0;
        bool improved = false;
        for (int halvings = 0; halvings < 30 && !improved; ++halvings, damping *= 0.5) {
            std::vector<double> trial = z;
            for (std::size_t i = 0; i < n; ++i)
                trial[i] += damping * step(static_cast<Eigen::Index>(i));
            Eigen::VectorXd trial_residual(N);
            auto trial_norm = residual_norm(f, trial, y, &trial_residual);
            if (trial_norm && *trial_norm < *norm) {
                z = std::move(trial);
                residual = trial_residual;
                norm = trial_norm;
                improved = true;
            }
        }
        if (!improved)
            break;
    }
    if (*norm > tol)
        return std::nullopt;
    return z;
}

CheckReport diffeomorphism_check(const SmoothMap& f, std::span<const std::vector<double>> points, double tol)
{
    CheckReport report;
    for (std::size_t s = 0; s < points.size(); ++s) {
        double dev = kInf;
        try {
            std::vector<double> y = f(points[s]);
            if (auto z = newton_inverse(f, y, y))
                dev = max_abs_vec_diff(*z, points[s]);
        } catch (const Error&) {
        }
        record(report, s, dev, tol, "inverse");
    }
    return report;
}

} // namespace alphajet
