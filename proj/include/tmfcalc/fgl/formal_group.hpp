#ifndef TMFCALC_FGL_FORMAL_GROUP_HPP
#define TMFCALC_FGL_FORMAL_GROUP_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/series/multi_series.hpp>

namespace tmfcalc
{

// A formal group law F(x, y) together with its formal inverse i(z), both truncated
// at the same total degree. Construction does not verify the axioms; see verify().
template <typename Alg>
class formal_group_law
{
public:
    using series = multi_series<Alg>;

    formal_group_law() = default;
    formal_group_law(series law, series neg) : m_law(std::move(law)), m_neg(std::move(neg))
    {
        if (m_law.vars() != std::vector<std::string>{"x", "y"}) {
            throw std::invalid_argument("a formal group law is a series in (x, y)");
        }
        if (m_neg.vars() != std::vector<std::string>{"z"}) {
            throw std::invalid_argument("the formal inverse is a series in z");
        }
        if (m_law.algebra() != m_neg.algebra()) {
            throw ring_mismatch("formal group law and inverse over different rings");
        }
    }

    static formal_group_law additive(const Alg &alg, int trunc)
    {
        series f(alg, {"x", "y"}, trunc);
        f.add_term({1, 0}, alg.one());
        f.add_term({0, 1}, alg.one());
        series n(alg, {"z"}, trunc);
        n.add_term({1}, alg.neg(alg.one()));
        return formal_group_law(std::move(f), std::move(n));
    }

    // F = x + y - xy, the multiplicative group in the coordinate 1 - u.
    static formal_group_law multiplicative(const Alg &alg, int trunc)
    {
        series f(alg, {"x", "y"}, trunc);
        f.add_term({1, 0}, alg.one());
        f.add_term({0, 1}, alg.one());
        f.add_term({1, 1}, alg.neg(alg.one()));
        // i(z) = -z/(1-z)
        series n(alg, {"z"}, trunc);
        for (int k = 1; k < trunc; ++k) {
            n.add_term({k}, alg.neg(alg.one()));
        }
        return formal_group_law(std::move(f), std::move(n));
    }

    // Wraps an arbitrary series F(x, y), solving F(z, i(z)) = 0 for the inverse.
    // Requires the coefficient of y in F to be a unit.
    static formal_group_law from_series(const series &f)
    {
        const Alg &alg = f.algebra();
        const auto b = f.coeff({0, 1});
        if (!alg.is_unit(b)) {
            throw not_a_unit("coefficient of y in F is not a unit; cannot solve for the inverse");
        }
        const auto binv = alg.inverse(b);
        series z = series::variable(alg, {"z"}, f.trunc(), "z");
        series y(alg, {"z"}, f.trunc());
        for (int k = 0; k <= f.trunc(); ++k) {
            series val = substitute(f, {{"x", z}, {"y", y}});
            if (val.is_zero()) {
                break;
            }
            y -= val.scaled(binv);
        }
        return formal_group_law(f, y);
    }

    const series &law() const noexcept
    {
        return m_law;
    }
    const series &inverse_series() const noexcept
    {
        return m_neg;
    }
    const Alg &algebra() const noexcept
    {
        return m_law.algebra();
    }
    int trunc() const noexcept
    {
        return m_law.trunc();
    }

    // a +_F b for series sharing a variable set, both with zero constant term.
    series add(const series &a, const series &b) const
    {
        return substitute(m_law, {{"x", a}, {"y", b}});
    }
    series negate(const series &a) const
    {
        return substitute(m_neg, {{"z", a}});
    }
    series sum(const std::vector<series> &terms) const
    {
        if (terms.empty()) {
            throw std::invalid_argument("empty formal sum");
        }
        series acc = terms.front();
        for (std::size_t i = 1; i < terms.size(); ++i) {
            acc = add(acc, terms[i]);
        }
        return acc;
    }

    // Group-linear combination sum_i coeffs[i] * vars[i] in the given variable set.
    series linear_form(const std::vector<std::string> &vars, const std::vector<int> &coeffs, int trunc) const
    {
        if (coeffs.size() != vars.size()) {
            throw std::invalid_argument("linear form has the wrong length");
        }
        std::vector<series> parts;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (coeffs[i] == 0) {
                continue;
            }
            series v = series::variable(algebra(), vars, trunc, vars[i]);
            series term = coeffs[i] > 0 ? v : negate(v);
            for (int k = 1; k < std::abs(coeffs[i]); ++k) {
                parts.push_back(term);
            }
            parts.push_back(term);
        }
        if (parts.empty()) {
            return series(algebra(), vars, trunc);
        }
        return sum(parts);
    }

    formal_group_law truncated(int t) const
    {
        return formal_group_law(m_law.truncated(t), m_neg.truncated(t));
    }

private:
    series m_law;
    series m_neg;
};

// Image of a scalar formal group law under the canonical map to another ring.
inline formal_group_law<scalar_algebra> change_ring(const formal_group_law<scalar_algebra> &g,
                                                    const coeff_ring &ring)
{
    const scalar_algebra alg(ring);
    auto conv = [&](const rational &c) { return ring.normalize(c); };
    return formal_group_law<scalar_algebra>(g.law().map_coefficients(alg, conv),
                                            g.inverse_series().map_coefficients(alg, conv));
}

struct axiom_result {
    bool ok = true;
    std::optional<exponent> first_failure;
};

struct fgl_report {
    axiom_result unit;
    axiom_result commutativity;
    axiom_result associativity;
    axiom_result inverse;

    bool all_pass() const
    {
        return unit.ok && commutativity.ok && associativity.ok && inverse.ok;
    }
};

namespace detail
{

template <typename Alg>
axiom_result compare_axiom(const multi_series<Alg> &lhs, const multi_series<Alg> &rhs)
{
    axiom_result r;
    r.first_failure = earliest_difference(lhs, rhs);
    r.ok = !r.first_failure.has_value();
    return r;
}

} // namespace detail

// Checks the four group-law axioms up to truncation; failures name the earliest
// offending monomial in grlex order.
template <typename Alg>
fgl_report verify(const formal_group_law<Alg> &g)
{
    using series = multi_series<Alg>;
    const Alg &alg = g.algebra();
    const int t = g.trunc();
    const auto &f = g.law();
    fgl_report rep;

    // unit law: the part of F on the coordinate axes must be x + y
    series axes(alg, {"x", "y"}, t);
    for (const auto &[e, c] : f.terms()) {
        if (e[0] == 0 || e[1] == 0) {
            axes.add_term(e, c);
        }
    }
    series ident(alg, {"x", "y"}, t);
    ident.add_term({1, 0}, alg.one());
    ident.add_term({0, 1}, alg.one());
    rep.unit = detail::compare_axiom(axes, ident);

    rep.commutativity = detail::compare_axiom(f, permute_variables(f, {1, 0}));

    const std::vector<std::string> xyz{"x", "y", "z"};
    const series x = series::variable(alg, xyz, t, "x");
    const series y = series::variable(alg, xyz, t, "y");
    const series z = series::variable(alg, xyz, t, "z");
    const series left = g.add(g.add(x, y), z);
    const series right = g.add(x, g.add(y, z));
    rep.associativity = detail::compare_axiom(left, right);

    const series zz = series::variable(alg, {"z"}, t, "z");
    const series inv = substitute(f, {{"x", zz}, {"y", g.inverse_series()}});
    rep.inverse = detail::compare_axiom(inv, series(alg, {"z"}, t));
    return rep;
}

// Logarithm l(z) = z + O(z^2) with l(F(x,y)) = l(x) + l(y): the integral of the
// invariant differential 1 / (dF/dy)(z, 0).
template <typename Alg>
multi_series<Alg> fgl_log(const formal_group_law<Alg> &g)
{
    const Alg &alg = g.algebra();
    if (!alg.divides_by_integers()) {
        throw std::domain_error("the logarithm of a formal group law needs the exact-rational ring, got "
                                + alg.describe());
    }
    const auto dfdy = derivative(g.law(), 1);
    multi_series<Alg> at_zero(alg, {"z"}, dfdy.trunc());
    for (const auto &[e, c] : dfdy.terms()) {
        if (e[1] == 0) {
            at_zero.add_term({e[0]}, c);
        }
    }
    auto l = integral(invert(at_zero), 0);
    return l.truncated(g.trunc());
}

} // namespace tmfcalc

#endif
