#ifndef TMFCALC_WITTEN_WITTEN_HPP
#define TMFCALC_WITTEN_WITTEN_HPP

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/mf/modular_forms.hpp>
#include <tmfcalc/series/qseries.hpp>
#include <tmfcalc/series/text_format.hpp>
#include <tmfcalc/theta/cube_section.hpp>

namespace tmfcalc
{

// Parts in non-increasing order; {2,1} stands for p2 p1.
using partition = std::vector<int>;

inline std::string format_partition(const partition &p)
{
    std::string s = "p[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += std::to_string(p[i]);
    }
    return s + "]";
}

inline std::vector<partition> partitions_of(int n)
{
    std::vector<partition> out;
    partition cur;
    std::function<void(int, int)> rec = [&](int left, int max_part) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(left, max_part); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

struct pontryagin_data {
    int dim = 0;
    std::map<partition, integer> numbers; // missing partitions are zero

    int degree() const
    {
        return dim / 4;
    }

    integer number(const partition &p) const
    {
        auto it = numbers.find(p);
        return it == numbers.end() ? integer(0) : it->second;
    }

    // every Pontryagin number of a monomial divisible by p1 vanishes
    bool string_like() const
    {
        for (const auto &[p, v] : numbers) {
            if (v != 0 && std::find(p.begin(), p.end(), 1) != p.end()) {
                return false;
            }
        }
        return true;
    }

    void validate() const
    {
        if (dim <= 0 || dim % 4 != 0) {
            throw std::invalid_argument("dimension must be a positive multiple of 4, got " + std::to_string(dim));
        }
        for (const auto &[p, v] : numbers) {
            int s = 0;
            for (int k : p) {
                if (k < 1) {
                    throw std::invalid_argument("partition parts must be positive: " + format_partition(p));
                }
                s += k;
            }
            if (s != degree() || !std::is_sorted(p.rbegin(), p.rend())) {
                throw std::invalid_argument(format_partition(p) + " is not a partition of " + std::to_string(degree()));
            }
        }
    }
};

// Lines "dim = 4k" and "p[l1,l2,...] = integer"; '#' starts a comment.
inline pontryagin_data parse_pontryagin(std::istream &in)
{
    pontryagin_data m;
    bool have_dim = false;
    std::string line;
    int lineno = 0;
    std::vector<std::pair<partition, int>> pending;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string t = detail::trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (t.empty()) {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw parse_error("expected 'key = value'", lineno);
        }
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));
        if (key == "dim") {
            const long d = detail::parse_long(val, lineno, "dimension");
            if (d <= 0 || d % 4 != 0) {
                throw parse_error("dimension must be a positive multiple of 4", lineno);
            }
            m.dim = static_cast<int>(d);
            have_dim = true;
            continue;
        }
        if (key.size() < 3 || key.substr(0, 2) != "p[" || key.back() != ']') {
            throw parse_error("expected dim or p[...], got '" + key + "'", lineno);
        }
        partition p;
        for (const auto &tok : detail::split(key.substr(2, key.size() - 3), ',')) {
            const long k = detail::parse_long(tok, lineno, "partition part");
            if (k < 1) {
                throw parse_error("partition parts must be positive", lineno);
            }
            p.push_back(static_cast<int>(k));
        }
        std::sort(p.rbegin(), p.rend());
        if (m.numbers.count(p) != 0) {
            throw parse_error("duplicate entry " + format_partition(p), lineno);
        }
        const rational v = detail::parse_number_at(val, lineno);
        if (v.get_den() != 1) {
            throw parse_error("Pontryagin numbers are integers", lineno);
        }
        m.numbers[p] = v.get_num();
        pending.emplace_back(p, lineno);
    }
    if (!have_dim) {
        throw parse_error("missing 'dim = ...' line", lineno > 0 ? lineno : 1);
    }
    for (const auto &[p, ln] : pending) {
        int s = 0;
        for (int k : p) {
            s += k;
        }
        if (s != m.degree()) {
            throw parse_error(format_partition(p) + " is not a partition of " + std::to_string(m.degree()), ln);
        }
    }
    return m;
}

inline pontryagin_data parse_pontryagin_string(const std::string &s)
{
    std::istringstream in(s);
    return parse_pontryagin(in);
}

// Polynomial in p1, p2, ... keyed by exponent vectors (index i holds the power of p_{i+1}).
using p_monomial = std::vector<int>;
using p_polynomial = std::map<p_monomial, qseries>;

inline int p_weight(const p_monomial &m)
{
    int w = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        w += static_cast<int>(i + 1) * m[i];
    }
    return w;
}

inline partition to_partition(const p_monomial &m)
{
    partition p;
    for (std::size_t i = m.size(); i-- > 0;) {
        for (int r = 0; r < m[i]; ++r) {
            p.push_back(static_cast<int>(i + 1));
        }
    }
    return p;
}

namespace detail
{

// product truncated to weight <= max_weight
inline p_polynomial p_multiply(const p_polynomial &a, const p_polynomial &b, int max_weight)
{
    p_polynomial r;
    for (const auto &[ma, ca] : a) {
        for (const auto &[mb, cb] : b) {
            p_monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                m[i] = ma[i] + mb[i];
            }
            if (p_weight(m) > max_weight) {
                continue;
            }
            auto it = r.find(m);
            if (it == r.end()) {
                r.emplace(m, ca * cb);
            } else {
                it->second += ca * cb;
            }
        }
    }
    for (auto it = r.begin(); it != r.end();) {
        it = it->second.is_zero() ? r.erase(it) : std::next(it);
    }
    return r;
}

inline void p_add(p_polynomial &acc, const p_polynomial &b, const rational &scale)
{
    for (const auto &[m, c] : b) {
        auto it = acc.find(m);
        if (it == acc.end()) {
            acc.emplace(m, c * scale);
        } else {
            it->second += c * scale;
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    }
}

// power sums s_j = sum x_i^j in the elementary symmetric functions p_i of the x_i (Newton)
inline std::vector<p_polynomial> power_sums(int k, std::size_t trunc_q)
{
    const std::size_t nv = static_cast<std::size_t>(k);
    auto p = [&](int i) {
        p_monomial m(nv, 0);
        m[static_cast<std::size_t>(i - 1)] = 1;
        return p_polynomial{{m, qseries::constant(coeff_ring::Q(), trunc_q, 1)}};
    };
    std::vector<p_polynomial> s(static_cast<std::size_t>(k) + 1);
    for (int j = 1; j <= k; ++j) {
        p_polynomial acc;
        for (int i = 1; i < j; ++i) {
            p_add(acc, p_multiply(p(i), s[static_cast<std::size_t>(j - i)], k), rational(i % 2 == 1 ? 1 : -1));
        }
        p_add(acc, p(j), rational(j % 2 == 1 ? j : -j));
        s[static_cast<std::size_t>(j)] = acc;
    }
    return s;
}

} // namespace detail

// log(z / sigma(z)) = sum_j a_j z^{2j}; returns a_1..a_k.
inline std::vector<qseries> log_characteristic_coefficients(int k, std::size_t trunc_q)
{
    const auto sigma = sigma_series(2 * k + 2, trunc_q);
    const auto unit = sigma_unit(sigma);
    const auto lg = log(unit);
    std::vector<qseries> a(static_cast<std::size_t>(k) + 1, qseries(coeff_ring::Q(), trunc_q));
    for (int j = 1; j <= k; ++j) {
        a[static_cast<std::size_t>(j)] = -lg.coeff({2 * j});
    }
    return a;
}

// K_k: the weight-k part of prod_i Q(z_i), Q(z) = z/sigma(z), written in the Pontryagin classes
// p_i = e_i(z_1^2, z_2^2, ...). g2_shift is added to the z^2 coefficient of log Q.
inline p_polynomial genus_polynomial(int k, std::size_t trunc_q, const rational &g2_shift = 0)
{
    if (k < 1) {
        throw std::invalid_argument("genus polynomial degree must be positive");
    }
    static std::mutex mu;
    static std::map<std::tuple<int, std::size_t, std::string>, p_polynomial> cache;
    const auto key = std::make_tuple(k, trunc_q, g2_shift.get_str());
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    auto a = log_characteristic_coefficients(k, trunc_q);
    a[1] += qseries::constant(coeff_ring::Q(), trunc_q, g2_shift);
    const auto s = detail::power_sums(k, trunc_q);
    // X = sum_j a_j s_j, then exp(X) to weight k
    p_polynomial x;
    for (int j = 1; j <= k; ++j) {
        for (const auto &[m, c] : s[static_cast<std::size_t>(j)]) {
            p_polynomial term{{m, c * a[static_cast<std::size_t>(j)]}};
            detail::p_add(x, term, 1);
        }
    }
    const p_monomial zero(static_cast<std::size_t>(k), 0);
    p_polynomial result{{zero, qseries::constant(coeff_ring::Q(), trunc_q, 1)}};
    p_polynomial power = result;
    rational fact = 1;
    for (int n = 1; n <= k; ++n) {
        power = detail::p_multiply(power, x, k);
        fact *= n;
        detail::p_add(result, power, 1 / fact);
    }
    p_polynomial top;
    for (const auto &[m, c] : result) {
        if (p_weight(m) == k) {
            top.emplace(m, c);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, top);
    return top;
}

struct genus_value {
    int weight = 0;
    qseries qexp;
};

inline genus_value witten_genus(const pontryagin_data &m, std::size_t trunc_q, const rational &g2_shift = 0)
{
    m.validate();
    const int k = m.degree();
    const auto poly = genus_polynomial(k, trunc_q, g2_shift);
    qseries acc(coeff_ring::Q(), trunc_q);
    for (const auto &[mono, c] : poly) {
        const integer v = m.number(to_partition(mono));
        if (v != 0) {
            acc += c * rational(v);
        }
    }
    return {m.dim / 2, acc};
}

inline rational a_hat(const pontryagin_data &m)
{
    return witten_genus(m, 1).qexp[0];
}

struct modularity_report {
    decomposition decomp;
    bool g2_invariant = false;
    rational g2_shift; // the perturbation used

    bool all_pass() const
    {
        return decomp.ok && g2_invariant;
    }
};

// Decomposes the genus in weight dim/2 and confirms it does not see a shift of the G2 term.
inline modularity_report modularity_check(const pontryagin_data &m, std::size_t trunc_q,
                                          const rational &shift = rational(1, 7))
{
    if (!m.string_like()) {
        throw std::invalid_argument("modularity is only checked for string-like data (p1-numbers zero)");
    }
    const auto g = witten_genus(m, trunc_q);
    modularity_report r;
    r.decomp = decompose(g.qexp, g.weight);
    r.g2_shift = shift;
    r.g2_invariant = witten_genus(m, trunc_q, shift).qexp == g.qexp;
    return r;
}

struct div24_result {
    integer q1;
    bool divisible = false;
};

// q^1 coefficient of alpha c4^3 + beta (24 Delta)
inline div24_result div24_check(const integer &alpha, const integer &beta)
{
    const qseries e4 = c4(2).qexp;
    const qseries f = pow(e4, 3) * rational(alpha) + delta(2).qexp * rational(24 * beta);
    div24_result r;
    r.q1 = f[1].get_num();
    r.divisible = r.q1 % 24 == 0;
    return r;
}

} // namespace tmfcalc

#endif
