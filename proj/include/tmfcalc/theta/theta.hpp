#ifndef TMFCALC_THETA_THETA_HPP
#define TMFCALC_THETA_THETA_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/series/laurent.hpp>

namespace tmfcalc
{

// Theta(u) = (1 - u^-1) prod_{n>=1} (1 - q^n u)(1 - q^n u^-1) / (1 - q^n)^2 as a q-series of
// Laurent polynomials in u, truncated below q^trunc_q.
inline laurent_qseries theta_u(std::size_t trunc_q)
{
    if (trunc_q < 1) {
        throw std::invalid_argument("theta needs trunc_q >= 1");
    }
    laurent_qseries t(1, trunc_q);
    t.layer(0) = laurent_poly::constant(1, 1) - laurent_poly::monomial({-1}, 1);
    for (std::size_t n = 1; n < trunc_q; ++n) {
        // (1 - q^n u)(1 - q^n u^-1) = 1 - q^n (u + u^-1) + q^2n
        laurent_qseries f(1, trunc_q);
        f.layer(0) = laurent_poly::constant(1, 1);
        f.layer(n) = -(laurent_poly::monomial({1}, 1) + laurent_poly::monomial({-1}, 1));
        if (2 * n < trunc_q) {
            f.layer(2 * n) = laurent_poly::constant(1, 1);
        }
        // (1 - q^n)^-2 = sum_k (k+1) q^{nk}
        laurent_qseries g(1, trunc_q);
        for (std::size_t k = 0; n * k < trunc_q; ++k) {
            g.layer(n * k) = laurent_poly::constant(1, static_cast<long>(k + 1));
        }
        t = t * f * g;
    }
    return t;
}

struct periodicity_result {
    bool ok = true;
    // first mismatch as (q-degree, exponent vector)
    std::optional<std::pair<long, std::vector<int>>> first_failure;
};

namespace detail
{

// For F = sum_m F_m q^m with Laurent layers F_m, checks F(u_i -> q u_i) = sign q^-c u^-b F
// coefficientwise wherever both sides are stored.
inline periodicity_result check_shift_identity(const laurent_qseries &f, std::size_t var, int sign, long c,
                                               const std::vector<int> &b)
{
    periodicity_result res;
    const long t = static_cast<long>(f.trunc());
    // collect every exponent vector that occurs anywhere
    std::vector<std::vector<int>> exps;
    for (const auto &layer : f.layers()) {
        for (const auto &[e, v] : layer.terms()) {
            exps.push_back(e);
            std::vector<int> shifted = e;
            for (std::size_t j = 0; j < shifted.size(); ++j) {
                shifted[j] -= b[j];
            }
            exps.push_back(std::move(shifted));
        }
    }
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    for (long mq = -c; mq < t - c && res.ok; ++mq) {
        for (const auto &a : exps) {
            // left: coefficient of q^mq u^a in F(q u_i) is F_{mq - a_i}[a]
            const long li = mq - a[var];
            // right: sign * F_{mq + c}[a + b]
            const long ri = mq + c;
            if (li < 0 || li >= t || ri < 0 || ri >= t) {
                continue;
            }
            std::vector<int> ab = a;
            for (std::size_t j = 0; j < ab.size(); ++j) {
                ab[j] += b[j];
            }
            const integer lhs = f.layer(static_cast<std::size_t>(li)).coeff(a);
            const integer rhs = f.layer(static_cast<std::size_t>(ri)).coeff(ab) * sign;
            if (lhs != rhs) {
                res.ok = false;
                res.first_failure = std::make_pair(mq, a);
                break;
            }
        }
    }
    return res;
}

} // namespace detail

// Theta(q u) = -q^-1 u^-1 Theta(u), compared wherever both sides are determined by the truncation.
inline periodicity_result quasi_periodicity_check(const laurent_qseries &theta)
{
    if (theta.nvars() != 1) {
        throw std::invalid_argument("quasi-periodicity is checked for a theta function in one variable");
    }
    return detail::check_shift_identity(theta, 0, -1, 1, {1});
}

// A factor Theta(u^v) picks up -q^-1 u^-v under u_i -> q u_i whenever v_i = 1.
struct multiplier {
    int sign = 1;
    long q_shift = 0;        // power of q^-1
    std::vector<int> u_shift; // power of u^-1

    friend bool operator==(const multiplier &a, const multiplier &b)
    {
        return a.sign == b.sign && a.q_shift == b.q_shift && a.u_shift == b.u_shift;
    }
};

inline multiplier shift_multiplier(const std::vector<std::vector<int>> &factors, std::size_t var, std::size_t nvars)
{
    multiplier m;
    m.u_shift.assign(nvars, 0);
    for (const auto &v : factors) {
        if (v[var] == 0) {
            continue;
        }
        if (v[var] != 1) {
            throw std::invalid_argument("multiplier bookkeeping needs exponents 0 or 1 in the shifted variable");
        }
        m.sign = -m.sign;
        m.q_shift += 1;
        for (std::size_t j = 0; j < nvars; ++j) {
            m.u_shift[j] += v[j];
        }
    }
    return m;
}

struct cube_invariance_report {
    bool multipliers_match = true;   // numerator and denominator multipliers agree for each u_i
    bool numerator_periodic = true;  // series identities for each factor product
    bool denominator_periodic = true;
    bool symmetric = true;           // both products invariant under permutations of (u1, u2, u3)
    std::string failure;

    bool all_pass() const
    {
        return multipliers_match && numerator_periodic && denominator_periodic && symmetric;
    }
};

inline const std::vector<std::vector<int>> &cube_numerator_factors()
{
    static const std::vector<std::vector<int>> f{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    return f;
}
inline const std::vector<std::vector<int>> &cube_denominator_factors()
{
    static const std::vector<std::vector<int>> f{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    return f;
}

// prod Theta(u^v) over the given exponent vectors
inline laurent_qseries theta_product(const laurent_qseries &theta, const std::vector<std::vector<int>> &factors,
                                     std::size_t nvars)
{
    laurent_qseries acc(nvars, theta.trunc());
    acc.layer(0) = laurent_poly::constant(nvars, 1);
    for (const auto &v : factors) {
        acc = acc * theta.monomial_substitute({v}, nvars);
    }
    return acc;
}

// Theta(u1u2u3)Theta(u1)Theta(u2)Theta(u3) / (Theta(u1u2)Theta(u1u3)Theta(u2u3)) is invariant under
// u_i -> q u_i; checked without division: equal multipliers, plus the exact shift identity of each product.
inline cube_invariance_report cube_invariance_check(const laurent_qseries &theta)
{
    cube_invariance_report rep;
    const auto &nf = cube_numerator_factors();
    const auto &df = cube_denominator_factors();
    const laurent_qseries num = theta_product(theta, nf, 3);
    const laurent_qseries den = theta_product(theta, df, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const multiplier mn = shift_multiplier(nf, i, 3);
        const multiplier md = shift_multiplier(df, i, 3);
        if (!(mn == md)) {
            rep.multipliers_match = false;
            rep.failure = "multiplier mismatch for u" + std::to_string(i + 1);
        }
        const auto rn = detail::check_shift_identity(num, i, mn.sign, mn.q_shift, mn.u_shift);
        if (!rn.ok && rep.numerator_periodic) {
            rep.numerator_periodic = false;
            rep.failure = "numerator fails under u" + std::to_string(i + 1) + " -> q u" + std::to_string(i + 1)
                          + " at q^" + std::to_string(rn.first_failure->first);
        }
        const auto rd = detail::check_shift_identity(den, i, md.sign, md.q_shift, md.u_shift);
        if (!rd.ok && rep.denominator_periodic) {
            rep.denominator_periodic = false;
            rep.failure = "denominator fails under u" + std::to_string(i + 1) + " -> q u" + std::to_string(i + 1)
                          + " at q^" + std::to_string(rd.first_failure->first);
        }
    }
    const std::vector<std::vector<std::vector<int>>> perms{
        {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}};
    for (const auto &p : perms) {
        if (!(num.monomial_substitute(p, 3) == num) || !(den.monomial_substitute(p, 3) == den)) {
            rep.symmetric = false;
            rep.failure = "products are not symmetric";
        }
    }
    return rep;
}

inline cube_invariance_report cube_invariance_check(std::size_t trunc_q)
{
    return cube_invariance_check(theta_u(trunc_q));
}

} // namespace tmfcalc

#endif
