#include "alphajet/int_poly.hpp"

#include <cmath>
#include <numeric>

namespace alphajet::oracle {

IntPoly IntPoly::constant(std::size_t num_vars, std::int64_t c)
{
    IntPoly p(num_vars);
    if (c != 0)
        p.terms_[Exponents(num_vars, 0)] = c;
    return p;
}

IntPoly IntPoly::variable(std::size_t num_vars, std::size_t index)
{
    IntPoly p(num_vars);
    Exponents e(num_vars, 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
}

IntPoly& IntPoly::operator+=(const IntPoly& o)
{
    for (const auto& [e, c] : o.terms_) {
        auto& slot = terms_[e];
        slot += c;
        if (slot == 0)
            terms_.erase(e);
    }
    return *this;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b)
{
    return a + b * IntPoly::constant(b.num_vars(), -1);
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    IntPoly r(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            IntPoly::Exponents e(ea);
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            r.terms_[e] += ca * cb;
        }
    }
    std::erase_if(r.terms_, [](const auto& t) { return t.second == 0; });
    return r;
}

IntPoly IntPoly::pow(unsigned e) const
{
    IntPoly r = constant(num_vars_, 1);
    for (unsigned i = 0; i < e; ++i)
        r = r * *this;
    return r;
}

IntPoly IntPoly::compose(std::span<const IntPoly> values) const
{
    std::size_t m = values.empty() ? 0 : values[0].num_vars();
    IntPoly r(m);
    for (const auto& [e, c] : terms_) {
        IntPoly term = constant(m, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            term = term * values[i].pow(static_cast<unsigned>(e[i]));
        r += term;
    }
    return r;
}

IntPoly IntPoly::shifted(std::span<const std::int64_t> shift) const
{
    std::vector<IntPoly> values;
    for (std::size_t i = 0; i < num_vars_; ++i)
        values.push_back(constant(num_vars_, shift[i]) + variable(num_vars_, i));
    return compose(values);
}

IntPoly IntPoly::truncated(int k) const
{
    IntPoly r(num_vars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) <= k)
            r.terms_[e] = c;
    return r;
}

std::optional<IntPoly> to_int_poly(const SmoothExpr& f, std::size_t num_vars)
{
    using Op = SmoothExpr::Op;
    auto arg = [&](std::size_t i) { return to_int_poly(f.args()[i], num_vars); };
    switch (f.op()) {
    case Op::Const: {
        double v = f.value();
        if (v != std::trunc(v) || std::abs(v) > 1e15)
            return std::nullopt;
        return IntPoly::constant(num_vars, static_cast<std::int64_t>(v));
    }
    case Op::Var:
        if (f.var_index() >= num_vars)
            return std::nullopt;
        return IntPoly::variable(num_vars, f.var_index());
    case Op::Add:
    case Op::Sub:
    case Op::Mul: {
        auto a = arg(0);
        auto b = arg(1);
        if (!a || !b)
            return std::nullopt;
        if (f.op() == Op::Add)
            return *a + *b;
        if (f.op() == Op::Sub)
            return *a - *b;
        return *a * *b;
    }
    case Op::Neg: {
        auto a = arg(0);
        if (!a)
            return std::nullopt;
        return IntPoly::constant(num_vars, 0) - *a;
    }
    case Op::Pow: {
        auto a = arg(0);
        if (!a || f.exponent() < 0)
            return std::nullopt;
        return a->pow(static_cast<unsigned>(f.exponent()));
    }
    default:
        return std::nullopt;
    }
}

} // namespace alphajet::oracle
