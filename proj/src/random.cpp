#include "alphajet/random.hpp"

#include <algorithm>
#include <cmath>

namespace alphajet {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

Rng Rng::derive(std::uint64_t seed, std::string_view label, std::uint64_t index)
{
    return Rng(splitmix64(splitmix64(seed ^ fnv1a(label)) + index));
}

long long Rng::uniform_int(long long lo, long long hi)
{
    if (hi <= lo)
        return lo;
    // span is tiny compared with 2^64, so the modulo bias is negligible
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
}

double Rng::uniform_real(double lo, double hi)
{
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

namespace gen {

namespace {

double nonzero(Rng& rng, Mode mode)
{
    double sign = rng.coin() ? 1.0 : -1.0;
    if (mode == Mode::Exact)
        return sign * static_cast<double>(rng.uniform_int(1, 2));
    return sign * rng.uniform_real(0.5, 2.0);
}

SmoothExpr monomial_expr(const Monomial& m)
{
    SmoothExpr r = SmoothExpr::constant(1.0);
    for (std::size_t i = 0; i < m.num_vars(); ++i)
        if (m[i] > 0)
            r = r * pow(SmoothExpr::variable(i), m[i]);
    return r;
}

// a0 + sum a_i y_i with |value| <= 1.5 on [-1, 1]^arity
SmoothExpr linear_form(Rng& rng, std::size_t arity)
{
    SmoothExpr l = SmoothExpr::constant(rng.uniform_real(-0.5, 0.5));
    for (std::size_t i = 0; i < arity; ++i)
        l = l + SmoothExpr::constant(rng.uniform_real(-1.0, 1.0) / static_cast<double>(arity)) *
                    SmoothExpr::variable(i);
    return l;
}

SmoothExpr unary_atom(Rng& rng, const SmoothExpr& l)
{
    const SmoothExpr two = SmoothExpr::constant(2.0);
    switch (rng.uniform_int(0, 7)) {
    case 0: return sin(l);
    case 1: return cos(l);
    case 2: return exp(l * SmoothExpr::constant(0.5));
    case 3: return log(two + pow(l, 2));
    case 4: return sqrt(two + sin(l));
    case 5: return SmoothExpr::constant(1.0) / (two + cos(l));
    case 6: return pow(l, 2);
    default: return pow(l, 3);
    }
}

} // namespace

double coefficient(Rng& rng, Mode mode)
{
    if (mode == Mode::Exact)
        return static_cast<double>(rng.uniform_int(-3, 3));
    return rng.uniform_real(-1.0, 1.0);
}

std::vector<double> point(Rng& rng, std::size_t dim, Mode mode)
{
    std::vector<double> p(dim);
    for (auto& v : p)
        v = mode == Mode::Exact ? static_cast<double>(rng.uniform_int(-2, 2)) : rng.uniform_real(-kBox, kBox);
    return p;
}

AlgebraSpec spec(Rng& rng, std::size_t max_n, int max_k, bool allow_relations, int min_k)
{
    auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(max_n)));
    int k = static_cast<int>(rng.uniform_int(min_k, max_k));
    std::vector<Monomial> relations;
    if (allow_relations && k >= 2 && rng.coin()) {
        auto count = rng.uniform_int(1, 2);
        for (long long r = 0; r < count; ++r) {
            auto degree = static_cast<int>(rng.uniform_int(2, k));
            auto candidates = monomials_of_degree(n, degree);
            relations.push_back(candidates[rng.index(candidates.size())]);
        }
    }
    return AlgebraSpec(n, k, std::move(relations));
}

AlgebraElement element(Rng& rng, const AlgebraSpec& spec, Mode mode)
{
    AlgebraElement::Terms terms;
    for (const auto& m : spec.basis())
        if (rng.coin(0.6))
            terms[m] = coefficient(rng, mode);
    return AlgebraElement(spec, terms);
}

AlgebraElement ideal_element(Rng& rng, const AlgebraSpec& spec, Mode mode)
{
    return maximal_ideal_part(element(rng, spec, mode));
}

SmoothExpr polynomial(Rng& rng, std::size_t arity, int max_degree, Mode mode)
{
    SmoothExpr r = SmoothExpr::constant(0.0);
    for (const auto& m : monomials_up_to(arity, max_degree)) {
        if (!rng.coin(0.5))
            continue;
        double c = coefficient(rng, mode);
        if (c == 0.0)
            continue;
        SmoothExpr term = m.is_one() ? SmoothExpr::constant(c) : SmoothExpr::constant(c) * monomial_expr(m);
        r = r + term;
    }
    return r;
}

SmoothMap polynomial_map(Rng& rng, std::size_t arity, std::size_t output_dim, int max_degree, Mode mode)
{
    std::vector<SmoothExpr> comps;
    for (std::size_t i = 0; i < output_dim; ++i)
        comps.push_back(polynomial(rng, arity, max_degree, mode));
    return SmoothMap(arity, std::move(comps));
}

SmoothExpr smooth(Rng& rng, std::size_t arity)
{
    SmoothExpr r = SmoothExpr::constant(0.0);
    auto atoms = rng.uniform_int(1, 3);
    for (long long a = 0; a < atoms; ++a) {
        SmoothExpr atom = unary_atom(rng, linear_form(rng, arity));
        if (rng.coin())
            atom = atom * unary_atom(rng, linear_form(rng, arity));
        r = r + SmoothExpr::constant(rng.uniform_real(-1.0, 1.0)) * atom;
    }
    return r;
}

AlphaJet alpha_jet(Rng& rng, const AlgebraSpec& algebra, std::size_t base_dim, std::size_t target_dim, Mode mode)
{
    std::vector<AlgebraElement> images;
    for (std::size_t j = 0; j < target_dim; ++j)
        images.push_back(ideal_element(rng, algebra, mode));
    if (algebra.order() >= 1) {
        Monomial g = Monomial::generator(algebra.num_generators(), 0);
        if (images[0].coefficient(g) == 0.0)
            images[0] += AlgebraElement::generator(algebra, 0) * nonzero(rng, mode);
    }
    return AlphaJet(algebra, point(rng, base_dim, mode), point(rng, target_dim, mode), std::move(images));
}

MapJet map_jet(Rng& rng, std::size_t source_dim, std::size_t target_dim, int order, Mode mode)
{
    AlgebraSpec a = AlgebraSpec::jet_algebra(source_dim, order);
    std::vector<AlgebraElement> comps;
    for (std::size_t j = 0; j < target_dim; ++j)
        comps.push_back(element(rng, a, mode));
    return MapJet(point(rng, source_dim, mode), order, std::move(comps));
}

SmoothMap affine_diffeomorphism(Rng& rng, std::size_t dim, Mode mode)
{
    std::vector<SmoothExpr> comps;
    for (std::size_t i = 0; i < dim; ++i) {
        SmoothExpr c = SmoothExpr::constant(mode == Mode::Exact ? static_cast<double>(rng.uniform_int(-2, 2))
                                                                : rng.uniform_real(-1.0, 1.0));
        c = c + SmoothExpr::constant(nonzero(rng, mode)) * SmoothExpr::variable(i);
        for (std::size_t j = 0; j < i; ++j) {
            double a = coefficient(rng, mode);
            if (a != 0.0)
                c = c + SmoothExpr::constant(a) * SmoothExpr::variable(j);
        }
        comps.push_back(c);
    }
    return SmoothMap(dim, std::move(comps));
}

SmoothMap nonlinear_diffeomorphism(Rng& rng, std::size_t dim)
{
    std::vector<SmoothExpr> comps;
    for (std::size_t i = 0; i < dim; ++i) {
        double a = nonzero(rng, Mode::Float);
        double c = (rng.coin() ? 1.0 : -1.0) * rng.uniform_real(0.1, 0.45) * std::abs(a);
        const SmoothExpr xi = SmoothExpr::variable(i);
        SmoothExpr e = SmoothExpr::constant(a) * xi + SmoothExpr::constant(rng.uniform_real(-1.0, 1.0)) +
                       SmoothExpr::constant(c) * sin(xi);
        if (i > 0)
            e = e + SmoothExpr::constant(rng.uniform_real(-0.5, 0.5)) * pow(SmoothExpr::variable(i - 1), 2);
        comps.push_back(e);
    }
    return SmoothMap(dim, std::move(comps));
}

AutomorphismFamily constant_family(Rng& rng, const AlgebraSpec& algebra, std::size_t base_arity, Mode mode)
{
    const std::size_t n = algebra.num_generators();
    std::vector<AutomorphismFamily::GeneratorImage> images(n);
    for (std::size_t i = 0; i < n; ++i) {
        images[i].push_back({Monomial::generator(n, i), SmoothExpr::constant(nonzero(rng, mode))});
        if (algebra.has_extra_relations())
            continue;
        for (const auto& m : algebra.basis()) {
            if (m.is_one() || (m.degree() == 1 && m[i] == 1))
                continue;
            // later generators only in the linear part keeps it triangular
            if (m.degree() == 1) {
                std::size_t j = 0;
                while (m[j] == 0)
                    ++j;
                if (j < i)
                    continue;
            }
            if (rng.coin(0.3))
                images[i].push_back({m, SmoothExpr::constant(coefficient(rng, mode))});
        }
    }
    return AutomorphismFamily(algebra, base_arity, std::move(images));
}

AutomorphismFamily smooth_family(Rng& rng, const AlgebraSpec& algebra, std::size_t base_arity)
{
    const std::size_t n = algebra.num_generators();
    std::vector<AutomorphismFamily::GeneratorImage> images(n);
    for (std::size_t i = 0; i < n; ++i) {
        SmoothExpr diag = exp(linear_form(rng, base_arity) * SmoothExpr::constant(0.25));
        images[i].push_back({Monomial::generator(n, i), diag});
        if (algebra.has_extra_relations())
            continue;
        for (const auto& m : algebra.basis()) {
            if (m.is_one() || (m.degree() == 1 && m[i] == 1))
                continue;
            if (m.degree() == 1) {
                std::size_t j = 0;
                while (m[j] == 0)
                    ++j;
                if (j < i)
                    continue;
            }
            if (rng.coin(0.3))
                images[i].push_back({m, SmoothExpr::constant(0.5) * sin(linear_form(rng, base_arity))});
        }
    }
    return AutomorphismFamily(algebra, base_arity, std::move(images));
}

ChartTransition linear_transition(Rng& rng, const AlgebraSpec& algebra, std::size_t base_dim, std::size_t fiber_dim,
                                  Mode mode)
{
    SmoothMap base = affine_diffeomorphism(rng, base_dim, mode);
    SmoothMap fiber = affine_diffeomorphism(rng, fiber_dim, mode);
    return ChartTransition(std::move(base), std::move(fiber), constant_family(rng, algebra, base_dim, mode));
}

ChartTransition nonlinear_transition(Rng& rng, const AlgebraSpec& algebra, std::size_t base_dim,
                                     std::size_t fiber_dim)
{
    SmoothMap base = nonlinear_diffeomorphism(rng, base_dim);
    SmoothMap fiber = nonlinear_diffeomorphism(rng, fiber_dim);
    return ChartTransition(std::move(base), std::move(fiber), smooth_family(rng, algebra, base_dim));
}

} // namespace gen

} // namespace alphajet
