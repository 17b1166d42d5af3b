#include "alphajet/monomial.hpp"

#include "alphajet/error.hpp"

namespace alphajet {

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents))
{
    for (int e : exponents_) {
        if (e < 0)
            throw InvalidArgument("monomial exponents must be non-negative");
        degree_ += e;
    }
}

Monomial Monomial::generator(std::size_t num_vars, std::size_t index)
{
    std::vector<int> e(num_vars, 0);
    e.at(index) = 1;
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const
{
    if (degree_ > other.degree_)
        return false;
    for (std::size_t i = 0; i < exponents_.size(); ++i)
        if (exponents_[i] > other.exponents_[i])
            return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    r.exponents_.resize(a.exponents_.size());
    for (std::size_t i = 0; i < a.exponents_.size(); ++i)
        r.exponents_[i] = a.exponents_[i] + b.exponents_[i];
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

std::string Monomial::to_string() const
{
    if (is_one())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (exponents_[i] == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += "x" + std::to_string(i + 1);
        if (exponents_[i] > 1)
            s += "^" + std::to_string(exponents_[i]);
    }
    return s;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    auto ea = a.exponents();
    auto eb = b.exponents();
    for (std::size_t i = 0; i < ea.size() && i < eb.size(); ++i)
        if (ea[i] != eb[i])
            return ea[i] > eb[i];
    return ea.size() < eb.size();
}

namespace {

void fill_degree(std::vector<int>& current, std::size_t pos, int remaining, std::vector<Monomial>& out)
{
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        out.emplace_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, int degree)
{
    std::vector<Monomial> out;
    if (num_vars == 0) {
        if (degree == 0)
            out.emplace_back(std::vector<int>{});
        return out;
    }
    std::vector<int> current(num_vars, 0);
    // descending exponent on the first variable gives graded-lex order
    fill_degree(current, 0, degree, out);
    return out;
}

std::vector<Monomial> monomials_up_to(std::size_t num_vars, int max_degree)
{
    std::vector<Monomial> out;
    for (int d = 0; d <= max_degree; ++d) {
        auto layer = monomials_of_degree(num_vars, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace alphajet
