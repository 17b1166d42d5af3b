#include "alphajet/weil_algebra.hpp"

#include "alphajet/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace alphajet {

struct AlgebraSpec::Data
{
    std::size_t n = 0;
    int k = 0;
    std::vector<Monomial> relations;
    std::vector<Monomial> basis;
};

AlgebraSpec::AlgebraSpec(std::size_t num_generators, int order, std::vector<Monomial> relations)
{
    if (num_generators == 0)
        throw InvalidArgument("an algebra needs at least one generator");
    if (order < 0)
        throw InvalidArgument("truncation order must be non-negative");

    std::vector<Monomial> kept;
    for (auto& r : relations) {
        if (r.num_vars() != num_generators)
            throw InvalidArgument("relation " + r.to_string() + " has " + std::to_string(r.num_vars()) +
                                  " exponents, expected " + std::to_string(num_generators));
        if (r.is_one())
            throw InvalidArgument("the unit monomial cannot be a relation");
        if (r.degree() <= order)
            kept.push_back(std::move(r));
    }
    std::sort(kept.begin(), kept.end(), GradedLexLess{});
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    // sorted by degree, so only earlier entries can divide later ones
    std::vector<Monomial> minimal;
    for (const auto& r : kept) {
        bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Monomial& g) { return g.divides(r); });
        if (!redundant)
            minimal.push_back(r);
    }

    auto data = std::make_shared<Data>();
    data->n = num_generators;
    data->k = order;
    data->relations = std::move(minimal);
    for (auto& m : monomials_up_to(num_generators, order)) {
        bool killed = std::any_of(data->relations.begin(), data->relations.end(),
                                  [&](const Monomial& g) { return g.divides(m); });
        if (!killed)
            data->basis.push_back(std::move(m));
    }
    data_ = std::move(data);
}

std::size_t AlgebraSpec::num_generators() const noexcept { return data_->n; }
int AlgebraSpec::order() const noexcept { return data_->k; }
const std::vector<Monomial>& AlgebraSpec::relations() const noexcept { return data_->relations; }
const std::vector<Monomial>& AlgebraSpec::basis() const noexcept { return data_->basis; }

std::ptrdiff_t AlgebraSpec::basis_index(const Monomial& m) const
{
    const auto& b = data_->basis;
    auto it = std::lower_bound(b.begin(), b.end(), m, GradedLexLess{});
    if (it == b.end() || !(*it == m))
        return -1;
    return it - b.begin();
}

bool AlgebraSpec::in_ideal(const Monomial& m) const
{
    if (m.degree() > data_->k)
        return true;
    for (const auto& g : data_->relations)
        if (g.divides(m))
            return true;
    return false;
}

std::vector<Monomial> AlgebraSpec::ideal_generators() const
{
    std::vector<Monomial> gens = data_->relations;
    for (auto& m : monomials_of_degree(data_->n, data_->k + 1)) {
        bool covered = std::any_of(data_->relations.begin(), data_->relations.end(),
                                   [&](const Monomial& g) { return g.divides(m); });
        if (!covered)
            gens.push_back(std::move(m));
    }
    return gens;
}

bool operator==(const AlgebraSpec& a, const AlgebraSpec& b)
{
    if (a.data_ == b.data_)
        return true;
    return a.data_->n == b.data_->n && a.data_->k == b.data_->k && a.data_->relations == b.data_->relations;
}

std::size_t algebra_dim(const AlgebraSpec& spec) { return spec.dim(); }

// ---------------------------------------------------------------------------
// AlgebraElement
// ---------------------------------------------------------------------------

namespace {

void require_same_spec(const AlgebraSpec& a, const AlgebraSpec& b, const char* what)
{
    if (!(a == b))
        throw SpecMismatch(std::string(what) + ": operands live in different algebras");
}

} // namespace

AlgebraElement::AlgebraElement(AlgebraSpec spec, const Terms& terms) : spec_(std::move(spec))
{
    for (const auto& [m, c] : terms) {
        if (m.num_vars() != spec_.num_generators())
            throw InvalidArgument("monomial " + m.to_string() + " has the wrong number of exponents");
        if (c != 0.0 && !spec_.in_ideal(m))
            terms_.emplace(m, c);
    }
}

AlgebraElement AlgebraElement::constant(const AlgebraSpec& spec, double c)
{
    AlgebraElement e(spec);
    if (c != 0.0)
        e.terms_.emplace(Monomial::one(spec.num_generators()), c);
    return e;
}

AlgebraElement AlgebraElement::generator(const AlgebraSpec& spec, std::size_t index)
{
    if (index >= spec.num_generators())
        throw InvalidArgument("generator index out of range");
    AlgebraElement e(spec);
    auto m = Monomial::generator(spec.num_generators(), index);
    if (!spec.in_ideal(m))
        e.terms_.emplace(std::move(m), 1.0);
    return e;
}

AlgebraElement AlgebraElement::from_dense(const AlgebraSpec& spec, std::span<const double> coefficients)
{
    if (coefficients.size() != spec.dim())
        throw InvalidArgument("dense coefficient vector has the wrong length");
    AlgebraElement e(spec);
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        if (coefficients[i] != 0.0)
            e.terms_.emplace_hint(e.terms_.end(), spec.basis()[i], coefficients[i]);
    return e;
}

double AlgebraElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

std::vector<double> AlgebraElement::dense() const
{
    std::vector<double> out(spec_.dim(), 0.0);
    for (const auto& [m, c] : terms_)
        out[static_cast<std::size_t>(spec_.basis_index(m))] = c;
    return out;
}

double AlgebraElement::max_abs_coefficient() const
{
    double r = 0.0;
    for (const auto& [m, c] : terms_)
        r = std::max(r, std::abs(c));
    return r;
}

void AlgebraElement::prune()
{
    std::erase_if(terms_, [](const auto& t) { return t.second == 0.0; });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other)
{
    require_same_spec(spec_, other.spec_, "add");
    for (const auto& [m, c] : other.terms_)
        terms_[m] += c;
    prune();
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other)
{
    require_same_spec(spec_, other.spec_, "subtract");
    for (const auto& [m, c] : other.terms_)
        terms_[m] -= c;
    prune();
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s)
{
    for (auto& t : terms_)
        t.second *= s;
    prune();
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
{
    require_same_spec(a.spec_, b.spec_, "multiply");
    const int k = a.spec_.order();
    AlgebraElement r(a.spec_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.degree() + mb.degree() > k)
                continue;
            Monomial m = ma * mb;
            if (a.spec_.in_ideal(m))
                continue;
            r.terms_[m] += ca * cb;
        }
    }
    r.prune();
    return r;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b)
{
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
}

std::string AlgebraElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        double mag = std::abs(c);
        if (m.is_one())
            os << mag;
        else if (mag == 1.0)
            os << m.to_string();
        else
            os << mag << "*" << m.to_string();
    }
    return os.str();
}

double augmentation(const AlgebraElement& a)
{
    return a.coefficient(Monomial::one(a.spec().num_generators()));
}

AlgebraElement maximal_ideal_part(const AlgebraElement& a)
{
    AlgebraElement::Terms t = a.terms();
    t.erase(Monomial::one(a.spec().num_generators()));
    return AlgebraElement(a.spec(), t);
}

AlgebraElement pow(const AlgebraElement& a, unsigned exponent)
{
    AlgebraElement result = AlgebraElement::one(a.spec());
    AlgebraElement base = a;
    while (exponent > 0) {
        if (exponent & 1u)
            result = result * base;
        exponent >>= 1;
        if (exponent > 0)
            base = base * base;
    }
    return result;
}

double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b)
{
    require_same_spec(a.spec(), b.spec(), "compare");
    double d = 0.0;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    GradedLexLess less;
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && less(ia->first, ib->first))) {
            d = std::max(d, std::abs(ia->second));
            ++ia;
        } else if (ia == a.terms().end() || less(ib->first, ia->first)) {
            d = std::max(d, std::abs(ib->second));
            ++ib;
        } else {
            d = std::max(d, std::abs(ia->second - ib->second));
            ++ia;
            ++ib;
        }
    }
    return d;
}

AlgebraElement substitute(const AlgebraElement& polynomial,
                          std::span<const AlgebraElement> values,
                          const AlgebraSpec& target)
{
    const std::size_t n = polynomial.spec().num_generators();
    if (values.size() != n)
        throw ArityMismatch("substitution needs one value per generator");

    // powers[i][e] = values[i]^e, grown on demand
    std::vector<std::vector<AlgebraElement>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        require_same_spec(values[i].spec(), target, "substitute");
        powers[i].push_back(AlgebraElement::one(target));
    }
    auto power = [&](std::size_t i, int e) -> const AlgebraElement& {
        while (static_cast<int>(powers[i].size()) <= e)
            powers[i].push_back(powers[i].back() * values[i]);
        return powers[i][static_cast<std::size_t>(e)];
    };

    AlgebraElement result(target);
    for (const auto& [m, c] : polynomial.terms()) {
        AlgebraElement term = AlgebraElement::constant(target, c);
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i)
            if (m[i] > 0)
                term = term * power(i, m[i]);
        result += term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// AlgebraMorphism
// ---------------------------------------------------------------------------

AlgebraMorphism::AlgebraMorphism(AlgebraSpec source, AlgebraSpec target, std::vector<AlgebraElement> images,
                                 double tol)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_.num_generators())
        throw InvalidMorphism("expected " + std::to_string(source_.num_generators()) + " generator images, got " +
                              std::to_string(images_.size()));
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!(images_[i].spec() == target_))
            throw SpecMismatch("generator image " + std::to_string(i + 1) + " is not in the target algebra");
        if (augmentation(images_[i]) != 0.0)
            throw InvalidMorphism("generator image " + std::to_string(i + 1) +
                                  " has a non-zero constant term (not in the maximal ideal)");
    }
    for (const auto& g : source_.ideal_generators()) {
        AlgebraElement img = AlgebraElement::one(target_);
        for (std::size_t i = 0; i < g.num_vars() && !img.is_zero(); ++i)
            if (g[i] > 0)
                img = img * pow(images_[i], static_cast<unsigned>(g[i]));
        if (img.max_abs_coefficient() > tol)
            throw InvalidMorphism("relation " + g.to_string() + " is not annihilated: image " + img.to_string());
    }
}

AlgebraMorphism AlgebraMorphism::identity(const AlgebraSpec& spec)
{
    std::vector<AlgebraElement> images;
    for (std::size_t i = 0; i < spec.num_generators(); ++i)
        images.push_back(AlgebraElement::generator(spec, i));
    return AlgebraMorphism(spec, spec, std::move(images));
}

AlgebraElement AlgebraMorphism::operator()(const AlgebraElement& a) const
{
    if (!(a.spec() == source_))
        throw SpecMismatch("morphism applied to an element outside its source algebra");
    return substitute(a, images_, target_);
}

AlgebraElement morphism_apply(const AlgebraMorphism& kappa, const AlgebraElement& a) { return kappa(a); }

AlgebraMorphism morphism_compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner)
{
    if (!(inner.target() == outer.source()))
        throw SpecMismatch("compose: inner target differs from outer source");
    std::vector<AlgebraElement> images;
    images.reserve(inner.images().size());
    for (const auto& img : inner.images())
        images.push_back(outer(img));
    return AlgebraMorphism(inner.source(), outer.target(), std::move(images));
}

std::vector<std::vector<double>> morphism_matrix(const AlgebraMorphism& kappa)
{
    const auto& src = kappa.source();
    const auto& tgt = kappa.target();
    std::vector<std::vector<double>> rows(tgt.dim(), std::vector<double>(src.dim(), 0.0));
    for (std::size_t j = 0; j < src.dim(); ++j) {
        AlgebraElement image = kappa(AlgebraElement(src, AlgebraElement::Terms{{src.basis()[j], 1.0}}));
        auto col = image.dense();
        for (std::size_t i = 0; i < col.size(); ++i)
            rows[i][j] = col[i];
    }
    return rows;
}

namespace {

bool invertible(const Eigen::MatrixXd& m, double tol)
{
    if (m.rows() != m.cols())
        return false;
    if (m.rows() == 0)
        return true;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(tol);
    return lu.isInvertible();
}

} // namespace

bool is_automorphism(const AlgebraMorphism& kappa, double tol)
{
    if (!(kappa.source() == kappa.target()))
        throw SpecMismatch("automorphism test needs equal source and target");

    // kappa maps m^d into m^d, so its matrix is block triangular by degree and
    // is invertible iff every same-degree block is. The blocks are small and
    // far better conditioned than the whole matrix.
    const auto rows = morphism_matrix(kappa);
    const auto& basis = kappa.source().basis();
    std::size_t begin = 0;
    while (begin < basis.size()) {
        std::size_t end = begin;
        while (end < basis.size() && basis[end].degree() == basis[begin].degree())
            ++end;
        const auto size = static_cast<Eigen::Index>(end - begin);
        Eigen::MatrixXd block(size, size);
        for (Eigen::Index i = 0; i < size; ++i)
            for (Eigen::Index j = 0; j < size; ++j)
                block(i, j) = rows[begin + static_cast<std::size_t>(i)][begin + static_cast<std::size_t>(j)];
        if (!invertible(block, tol))
            return false;
        begin = end;
    }
    return true;
}

} // namespace alphajet
