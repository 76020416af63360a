#ifndef TMFCALC_SERIES_MULTI_SERIES_HPP
#define TMFCALC_SERIES_MULTI_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tmfcalc/core/parallel.hpp>
#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/series/monomial.hpp>
#include <tmfcalc/series/qseries.hpp>

namespace tmfcalc
{

// The valuation of a series that vanishes to its truncation is not decidable.
class undecidable_valuation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Sparse multivariate power series truncated in total degree: only monomials of
// total degree < trunc are stored, zero coefficients are never stored.
// Alg is the coefficient algebra (scalar_algebra or qseries_algebra).
template <typename Alg>
class multi_series
{
public:
    using algebra_type = Alg;
    using value_type = typename Alg::value_type;
    using term_map = std::map<exponent, value_type, grlex_order>;

    multi_series() = default;
    multi_series(Alg alg, std::vector<std::string> vars, int trunc)
        : m_alg(std::move(alg)), m_vars(std::move(vars)), m_trunc(std::max(0, trunc))
    {
        for (std::size_t i = 0; i < m_vars.size(); ++i) {
            for (std::size_t j = i + 1; j < m_vars.size(); ++j) {
                if (m_vars[i] == m_vars[j]) {
                    throw std::invalid_argument("duplicate variable name '" + m_vars[i] + "'");
                }
            }
        }
    }

    static multi_series constant(const Alg &alg, const std::vector<std::string> &vars, int trunc,
                                 const value_type &c)
    {
        multi_series r(alg, vars, trunc);
        r.add_term(exponent(vars.size(), 0), c);
        return r;
    }
    static multi_series one(const Alg &alg, const std::vector<std::string> &vars, int trunc)
    {
        return constant(alg, vars, trunc, alg.one());
    }
    static multi_series variable(const Alg &alg, const std::vector<std::string> &vars, int trunc,
                                 const std::string &name)
    {
        multi_series r(alg, vars, trunc);
        exponent e(vars.size(), 0);
        e[r.index_of(name)] = 1;
        r.add_term(e, alg.one());
        return r;
    }
    static multi_series monomial(const Alg &alg, const std::vector<std::string> &vars, int trunc,
                                 const exponent &e, const value_type &c)
    {
        multi_series r(alg, vars, trunc);
        r.add_term(e, c);
        return r;
    }

    const Alg &algebra() const noexcept
    {
        return m_alg;
    }
    const std::vector<std::string> &vars() const noexcept
    {
        return m_vars;
    }
    std::size_t nvars() const noexcept
    {
        return m_vars.size();
    }
    int trunc() const noexcept
    {
        return m_trunc;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }

    std::size_t index_of(const std::string &name) const
    {
        auto it = std::find(m_vars.begin(), m_vars.end(), name);
        if (it == m_vars.end()) {
            throw std::invalid_argument("unknown variable '" + name + "'");
        }
        return static_cast<std::size_t>(it - m_vars.begin());
    }

    value_type coeff(const exponent &e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? m_alg.zero() : it->second;
    }
    value_type constant_term() const
    {
        return coeff(exponent(nvars(), 0));
    }

    // Adds c * x^e; monomials at or beyond the truncation are discarded.
    void add_term(const exponent &e, const value_type &c_in)
    {
        check_exponent(e);
        if (total_degree(e) >= m_trunc) {
            return;
        }
        const value_type c = m_alg.normalize(c_in);
        if (m_alg.is_zero(c)) {
            return;
        }
        auto it = m_terms.find(e);
        if (it == m_terms.end()) {
            m_terms.emplace(e, c);
        } else {
            m_alg.add_to(it->second, c);
            if (m_alg.is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }
    void set_term(const exponent &e, const value_type &c)
    {
        check_exponent(e);
        m_terms.erase(e);
        add_term(e, c);
    }

    multi_series truncated(int t) const
    {
        multi_series r(m_alg, m_vars, std::min(t, m_trunc));
        for (const auto &[e, c] : m_terms) {
            if (total_degree(e) >= r.m_trunc) {
                break;
            }
            r.m_terms.emplace_hint(r.m_terms.end(), e, c);
        }
        return r;
    }

    // Maps every coefficient through fn, which must return values of new_alg.
    template <typename Alg2, typename Fn>
    multi_series<Alg2> map_coefficients(const Alg2 &new_alg, Fn &&fn) const
    {
        multi_series<Alg2> r(new_alg, m_vars, m_trunc);
        for (const auto &[e, c] : m_terms) {
            r.add_term(e, fn(c));
        }
        return r;
    }

    multi_series operator-() const
    {
        multi_series r(*this);
        for (auto &[e, c] : r.m_terms) {
            c = m_alg.neg(c);
        }
        return r;
    }

    multi_series &operator+=(const multi_series &o)
    {
        check_compatible(o);
        if (o.m_trunc < m_trunc) {
            *this = truncated(o.m_trunc);
        }
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }
    multi_series &operator-=(const multi_series &o)
    {
        check_compatible(o);
        if (o.m_trunc < m_trunc) {
            *this = truncated(o.m_trunc);
        }
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, m_alg.neg(c));
        }
        return *this;
    }
    multi_series &operator*=(const multi_series &o)
    {
        *this = *this * o;
        return *this;
    }

    friend multi_series operator+(multi_series a, const multi_series &b)
    {
        a += b;
        return a;
    }
    friend multi_series operator-(multi_series a, const multi_series &b)
    {
        a -= b;
        return a;
    }

    multi_series scaled(const value_type &c) const
    {
        multi_series r(m_alg, m_vars, m_trunc);
        if (m_alg.is_zero(c)) {
            return r;
        }
        for (const auto &[e, v] : m_terms) {
            auto p = m_alg.mul(v, c);
            if (!m_alg.is_zero(p)) {
                r.m_terms.emplace_hint(r.m_terms.end(), e, std::move(p));
            }
        }
        return r;
    }
    multi_series scaled_rational(const rational &c) const
    {
        return scaled(m_alg.from_rational(c));
    }

    friend multi_series operator*(const multi_series &a, const multi_series &b)
    {
        a.check_compatible(b);
        const int t = std::min(a.m_trunc, b.m_trunc);
        if (a.m_terms.size() > b.m_terms.size()) {
            return b.multiply_by(a, t);
        }
        return a.multiply_by(b, t);
    }

    friend bool operator==(const multi_series &a, const multi_series &b)
    {
        if (a.m_vars != b.m_vars || a.m_trunc != b.m_trunc || a.m_alg != b.m_alg
            || a.m_terms.size() != b.m_terms.size()) {
            return false;
        }
        auto it = b.m_terms.begin();
        for (const auto &[e, c] : a.m_terms) {
            if (it->first != e || !a.m_alg.equal(it->second, c)) {
                return false;
            }
            ++it;
        }
        return true;
    }
    friend bool operator!=(const multi_series &a, const multi_series &b)
    {
        return !(a == b);
    }

    void check_compatible(const multi_series &o) const
    {
        if (m_alg != o.m_alg) {
            throw ring_mismatch("series over different coefficient rings: " + m_alg.describe() + " vs "
                                + o.m_alg.describe());
        }
        if (m_vars != o.m_vars) {
            throw ring_mismatch("series in different variable sets");
        }
    }

private:
    void check_exponent(const exponent &e) const
    {
        if (e.size() != m_vars.size()) {
            throw std::invalid_argument("exponent " + format_exponent(e) + " does not match "
                                        + std::to_string(m_vars.size()) + " variables");
        }
        for (int x : e) {
            if (x < 0) {
                throw std::invalid_argument("negative exponent in power series term");
            }
        }
    }

    // this has at most as many terms as o
    multi_series multiply_by(const multi_series &o, int t) const
    {
        multi_series r(m_alg, m_vars, t);
        if (m_terms.empty() || o.m_terms.empty()) {
            return r;
        }
        std::vector<const typename term_map::value_type *> lhs;
        lhs.reserve(m_terms.size());
        for (const auto &kv : m_terms) {
            lhs.push_back(&kv);
        }
        const std::size_t work = m_terms.size() * o.m_terms.size();
        const std::size_t nchunks = work > 20000 ? chunk_count(lhs.size(), 4) : 1;
        std::vector<term_map> partial(nchunks);
        auto body = [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            term_map &acc = partial[chunk];
            exponent prod(m_vars.size());
            for (std::size_t i = begin; i < end; ++i) {
                const auto &[ea, ca] = *lhs[i];
                const int da = total_degree(ea);
                if (da >= t) {
                    break;
                }
                for (const auto &[eb, cb] : o.m_terms) {
                    if (da + total_degree(eb) >= t) {
                        break;
                    }
                    for (std::size_t k = 0; k < prod.size(); ++k) {
                        prod[k] = ea[k] + eb[k];
                    }
                    auto it = acc.find(prod);
                    if (it == acc.end()) {
                        acc.emplace(prod, m_alg.mul(ca, cb));
                    } else {
                        m_alg.add_product(it->second, ca, cb);
                    }
                }
            }
        };
        if (nchunks == 1) {
            body(0, 0, lhs.size());
        } else {
            parallel_chunks(lhs.size(), 4, body);
        }
        r.m_terms = std::move(partial[0]);
        for (std::size_t c = 1; c < partial.size(); ++c) {
            for (auto &[e, v] : partial[c]) {
                auto it = r.m_terms.find(e);
                if (it == r.m_terms.end()) {
                    r.m_terms.emplace(e, std::move(v));
                } else {
                    m_alg.add_to(it->second, v);
                }
            }
        }
        for (auto it = r.m_terms.begin(); it != r.m_terms.end();) {
            it = m_alg.is_zero(it->second) ? r.m_terms.erase(it) : std::next(it);
        }
        return r;
    }

    template <typename>
    friend class multi_series;

    Alg m_alg{};
    std::vector<std::string> m_vars;
    int m_trunc = 0;
    term_map m_terms;
};

template <typename Alg>
multi_series<Alg> pow(const multi_series<Alg> &a, unsigned e)
{
    auto r = multi_series<Alg>::one(a.algebra(), a.vars(), a.trunc());
    auto base = a;
    while (e != 0) {
        if (e & 1u) {
            r *= base;
        }
        e >>= 1;
        if (e != 0) {
            base *= base;
        }
    }
    return r;
}

// Multiplicative inverse; the constant term must be a unit of the coefficient algebra.
template <typename Alg>
multi_series<Alg> invert(const multi_series<Alg> &a)
{
    const Alg &alg = a.algebra();
    const auto c0 = a.constant_term();
    if (!alg.is_unit(c0)) {
        throw not_a_unit("constant term " + alg.format(c0) + " is not a unit of " + alg.describe());
    }
    const auto c0inv = alg.inverse(c0);
    // a = c0 (1 + h) with h of positive order; 1/(1+h) = sum (-h)^k
    auto h = a.scaled(c0inv);
    h.set_term(exponent(a.nvars(), 0), alg.zero());
    auto minus_h = -h;
    auto acc = multi_series<Alg>::one(alg, a.vars(), a.trunc());
    auto term = acc;
    for (int k = 1; k < a.trunc(); ++k) {
        term *= minus_h;
        if (term.is_zero()) {
            break;
        }
        acc += term;
    }
    return acc.scaled(c0inv);
}

template <typename Alg>
multi_series<Alg> exp(const multi_series<Alg> &a)
{
    const Alg &alg = a.algebra();
    if (!alg.divides_by_integers()) {
        throw std::domain_error("exp requires the exact-rational ring, got " + alg.describe());
    }
    if (!alg.is_zero(a.constant_term())) {
        throw std::domain_error("exp requires a series with zero constant term");
    }
    auto acc = multi_series<Alg>::one(alg, a.vars(), a.trunc());
    auto term = acc;
    for (int k = 1; k < a.trunc(); ++k) {
        term = (term * a).scaled_rational(rational(1, k));
        if (term.is_zero()) {
            break;
        }
        acc += term;
    }
    return acc;
}

template <typename Alg>
multi_series<Alg> log(const multi_series<Alg> &a)
{
    const Alg &alg = a.algebra();
    if (!alg.divides_by_integers()) {
        throw std::domain_error("log requires the exact-rational ring, got " + alg.describe());
    }
    if (!alg.equal(a.constant_term(), alg.one())) {
        throw std::domain_error("log requires a series with constant term 1");
    }
    auto h = a;
    h.set_term(exponent(a.nvars(), 0), alg.zero());
    multi_series<Alg> acc(alg, a.vars(), a.trunc());
    auto power = multi_series<Alg>::one(alg, a.vars(), a.trunc());
    for (int k = 1; k < a.trunc(); ++k) {
        power *= h;
        if (power.is_zero()) {
            break;
        }
        acc += power.scaled_rational(rational(k % 2 == 1 ? 1 : -1, k));
    }
    return acc;
}

// Formal composition f(g_1, ..., g_n). Each variable of f is sent to the series in
// `assignment` or, if unassigned, to the same-named variable of the target variable set.
// All assigned series share one variable set and have zero constant term.
template <typename Alg>
multi_series<Alg> substitute(const multi_series<Alg> &f,
                             const std::map<std::string, multi_series<Alg>> &assignment)
{
    if (assignment.empty()) {
        return f;
    }
    const auto &first = assignment.begin()->second;
    const Alg &alg = f.algebra();
    const auto &target = first.vars();
    int t = f.trunc();
    for (const auto &[name, g] : assignment) {
        f.index_of(name);
        if (g.vars() != target) {
            throw ring_mismatch("substituted series must share one variable set");
        }
        if (g.algebra() != alg) {
            throw ring_mismatch("substituted series over a different coefficient ring");
        }
        if (!alg.is_zero(g.constant_term())) {
            throw std::domain_error("substituted series for '" + name + "' has a nonzero constant term");
        }
        t = std::min(t, g.trunc());
    }
    std::vector<multi_series<Alg>> images;
    for (const auto &v : f.vars()) {
        auto it = assignment.find(v);
        if (it != assignment.end()) {
            images.push_back(it->second.truncated(t));
        } else {
            if (std::find(target.begin(), target.end(), v) == target.end()) {
                throw std::invalid_argument("variable '" + v + "' is neither assigned nor in the target set");
            }
            images.push_back(multi_series<Alg>::variable(alg, target, t, v));
        }
    }
    const std::size_t n = images.size();
    std::vector<std::vector<multi_series<Alg>>> powers(n);
    auto power_of = [&](std::size_t i, int e) -> const multi_series<Alg> & {
        auto &cache = powers[i];
        if (cache.empty()) {
            cache.push_back(multi_series<Alg>::one(alg, target, t));
        }
        while (static_cast<int>(cache.size()) <= e) {
            cache.push_back(cache.back() * images[i]);
        }
        return cache[static_cast<std::size_t>(e)];
    };
    using term_ptr = const typename multi_series<Alg>::term_map::value_type *;
    std::vector<term_ptr> all;
    for (const auto &kv : f.terms()) {
        if (total_degree(kv.first) < t) {
            all.push_back(&kv);
        }
    }
    // Horner-style: group by the exponent of each variable in turn
    auto rec = [&](auto &&self, std::vector<term_ptr> group, std::size_t var) -> multi_series<Alg> {
        multi_series<Alg> acc(alg, target, t);
        if (var + 1 == n) {
            for (auto p : group) {
                acc += power_of(var, p->first[var]).scaled(p->second);
            }
            return acc;
        }
        std::map<int, std::vector<term_ptr>> by_exp;
        for (auto p : group) {
            by_exp[p->first[var]].push_back(p);
        }
        for (auto &[e, sub] : by_exp) {
            auto inner = self(self, std::move(sub), var + 1);
            if (e == 0) {
                acc += inner;
            } else {
                acc += power_of(var, e) * inner;
            }
        }
        return acc;
    };
    if (n == 0) {
        auto r = multi_series<Alg>(alg, target, t);
        if (!all.empty()) {
            r.add_term(exponent(target.size(), 0), all.front()->second);
        }
        return r;
    }
    return rec(rec, std::move(all), 0);
}

// Relabels variables: variable i of f becomes variable perm[i] of the result.
template <typename Alg>
multi_series<Alg> permute_variables(const multi_series<Alg> &f, const std::vector<std::size_t> &perm)
{
    if (perm.size() != f.nvars()) {
        throw std::invalid_argument("permutation size does not match the variable count");
    }
    multi_series<Alg> r(f.algebra(), f.vars(), f.trunc());
    exponent e2(f.nvars());
    for (const auto &[e, c] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            e2[perm[i]] = e[i];
        }
        r.add_term(e2, c);
    }
    return r;
}

// Embeds f into a larger variable set: variable i of f becomes target variable slots[i].
template <typename Alg>
multi_series<Alg> embed(const multi_series<Alg> &f, const std::vector<std::string> &target,
                        const std::vector<std::size_t> &slots)
{
    if (slots.size() != f.nvars()) {
        throw std::invalid_argument("slot list does not match the variable count");
    }
    multi_series<Alg> r(f.algebra(), target, f.trunc());
    for (const auto &[e, c] : f.terms()) {
        exponent e2(target.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            e2[slots[i]] += e[i];
        }
        r.add_term(e2, c);
    }
    return r;
}

// Order of vanishing along {var = 0}: the minimal exponent of var among stored terms.
template <typename Alg>
int valuation_in_variable(const multi_series<Alg> &f, std::size_t var)
{
    if (f.is_zero()) {
        throw undecidable_valuation("series vanishes to its truncation (total degree < "
                                    + std::to_string(f.trunc()) + "); valuation is undecidable");
    }
    int v = f.terms().begin()->first[var];
    for (const auto &[e, c] : f.terms()) {
        v = std::min(v, e[var]);
    }
    return v;
}

// First monomial (in grlex order) where a and b differ, comparing up to the smaller truncation.
template <typename Alg>
std::optional<exponent> earliest_difference(const multi_series<Alg> &a, const multi_series<Alg> &b)
{
    a.check_compatible(b);
    const int t = std::min(a.trunc(), b.trunc());
    const auto &alg = a.algebra();
    auto ia = a.terms().begin(), ib = b.terms().begin();
    grlex_order less;
    while (true) {
        const bool ea = ia == a.terms().end() || total_degree(ia->first) >= t;
        const bool eb = ib == b.terms().end() || total_degree(ib->first) >= t;
        if (ea && eb) {
            return std::nullopt;
        }
        if (eb || (!ea && less(ia->first, ib->first))) {
            return ia->first;
        }
        if (ea || less(ib->first, ia->first)) {
            return ib->first;
        }
        if (!alg.equal(ia->second, ib->second)) {
            return ia->first;
        }
        ++ia;
        ++ib;
    }
}

// One-variable helpers used throughout: series in a single named variable.
template <typename Alg>
multi_series<Alg> univariate(const Alg &alg, const std::string &var, int trunc,
                             const std::vector<typename Alg::value_type> &coeffs)
{
    multi_series<Alg> r(alg, {var}, trunc);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        r.add_term({static_cast<int>(i)}, coeffs[i]);
    }
    return r;
}

// Coefficient of var^k in a univariate series.
template <typename Alg>
typename Alg::value_type univariate_coeff(const multi_series<Alg> &f, int k)
{
    return f.coeff(exponent{k});
}

template <typename Alg>
multi_series<Alg> derivative(const multi_series<Alg> &f, std::size_t var)
{
    multi_series<Alg> r(f.algebra(), f.vars(), std::max(0, f.trunc() - 1));
    for (const auto &[e, c] : f.terms()) {
        if (e[var] == 0) {
            continue;
        }
        exponent e2 = e;
        --e2[var];
        r.add_term(e2, f.algebra().scale(c, rational(e[var])));
    }
    return r;
}

// Antiderivative in var with zero constant of integration; exact-rational rings only.
template <typename Alg>
multi_series<Alg> integral(const multi_series<Alg> &f, std::size_t var)
{
    if (!f.algebra().divides_by_integers()) {
        throw std::domain_error("integration requires the exact-rational ring");
    }
    multi_series<Alg> r(f.algebra(), f.vars(), f.trunc() + 1);
    for (const auto &[e, c] : f.terms()) {
        exponent e2 = e;
        ++e2[var];
        r.add_term(e2, f.algebra().scale(c, rational(1, e2[var])));
    }
    return r;
}

} // namespace tmfcalc

#endif
