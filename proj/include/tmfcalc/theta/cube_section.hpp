#ifndef TMFCALC_THETA_CUBE_SECTION_HPP
#define TMFCALC_THETA_CUBE_SECTION_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/cocycle/cocycles.hpp>
#include <tmfcalc/fgl/formal_group.hpp>
#include <tmfcalc/fgl/valuation.hpp>
#include <tmfcalc/series/laurent_unit.hpp>
#include <tmfcalc/series/multi_series.hpp>
#include <tmfcalc/series/qseries.hpp>

namespace tmfcalc
{

using q_multi_series = multi_series<qseries_algebra>;
using q_laurent_unit = laurent_unit<qseries_algebra>;

// sigma(z) = 2 sinh(z/2) prod_{n>=1} (1 - q^n (e^z + e^-z - 2) / (1 - q^n)^2), a series in z
// below z^trunc_z whose coefficients are q-series below q^trunc_q.
inline q_multi_series sigma_series(int trunc_z, std::size_t trunc_q)
{
    if (trunc_z < 2 || trunc_q < 1) {
        throw std::invalid_argument("sigma needs trunc_z >= 2 and trunc_q >= 1");
    }
    const coeff_ring q_ring = coeff_ring::Q();
    const qseries_algebra alg(q_ring, trunc_q);
    const std::vector<std::string> vz{"z"};
    q_multi_series sigma(alg, vz, trunc_z);
    // 2 sinh(z/2) = sum z^(2j+1) / (4^j (2j+1)!)
    rational fact = 1;
    for (int k = 1; k < trunc_z; ++k) {
        fact *= k;
        if (k % 2 == 1) {
            rational c = 1 / fact;
            for (int j = 1; j < k; j += 2) {
                c /= 4;
            }
            sigma.add_term({k}, alg.from_rational(c));
        }
    }
    // e^z + e^-z - 2 = sum_{j>=1} 2 z^(2j) / (2j)!
    q_multi_series c(alg, vz, trunc_z);
    fact = 1;
    for (int k = 1; k < trunc_z; ++k) {
        fact *= k;
        if (k % 2 == 0) {
            c.add_term({k}, alg.from_rational(2 / fact));
        }
    }
    for (std::size_t n = 1; n < trunc_q; ++n) {
        // q^n / (1 - q^n)^2 = sum_k k q^{nk}
        qseries w(q_ring, trunc_q);
        for (std::size_t k = 1; n * k < trunc_q; ++k) {
            w.set(n * k, rational(static_cast<long>(k)));
        }
        q_multi_series factor = q_multi_series::one(alg, vz, trunc_z);
        factor -= c.scaled(w);
        sigma *= factor;
    }
    return sigma;
}

// sigma(t)/t, the unit part of sigma.
template <typename Alg>
multi_series<Alg> sigma_unit(const multi_series<Alg> &sigma)
{
    if (sigma.nvars() != 1) {
        throw std::invalid_argument("sigma is a series in one variable");
    }
    const Alg &alg = sigma.algebra();
    if (!alg.is_zero(sigma.constant_term())) {
        throw std::domain_error("sigma must vanish at the origin");
    }
    multi_series<Alg> s(alg, sigma.vars(), sigma.trunc() - 1);
    for (const auto &[e, c] : sigma.terms()) {
        s.add_term({e[0] - 1}, c);
    }
    if (!alg.is_unit(s.constant_term())) {
        throw not_a_unit("sigma does not have a simple zero at the origin");
    }
    return s;
}

// Divisor loci of the three-variable section, in the order of the fiber formula:
// {x+y+z}, {x}, {y}, {z}, {x+y}, {x+z}, {y+z}, and the constant slot.
inline const std::vector<linear_form> &cube_divisor_forms()
{
    static const std::vector<linear_form> f{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                            {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    return f;
}

using divisor_vector = std::array<int, 8>;

inline divisor_vector expected_cube_divisor()
{
    return {1, 1, 1, 1, -1, -1, -1, 0};
}

inline std::string format_divisor_vector(const divisor_vector &d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += (d[i] > 0 ? "+" : "") + std::to_string(d[i]);
    }
    return s + ")";
}

// s(x,y,z) = sigma(x+y+z) sigma(x) sigma(y) sigma(z) / (sigma(x+y) sigma(x+z) sigma(y+z)) in the
// additive coordinate, given sigma as a one-variable series with a simple zero at 0.
template <typename Alg>
laurent_unit<Alg> cube_section_from_sigma(const multi_series<Alg> &sigma)
{
    using series = multi_series<Alg>;
    const series s1 = sigma_unit(sigma);
    const Alg &alg = s1.algebra();
    const int t = s1.trunc();
    const std::vector<std::string> xyz{"x", "y", "z"};
    auto at = [&](const linear_form &f) {
        series arg(alg, xyz, t);
        for (std::size_t i = 0; i < 3; ++i) {
            if (f[i] != 0) {
                arg += series::variable(alg, xyz, t, xyz[i]).scaled_rational(rational(f[i]));
            }
        }
        return detail::evaluate_at(s1, {arg});
    };
    const auto &forms = cube_divisor_forms();
    series num = series::one(alg, xyz, t);
    series den = series::one(alg, xyz, t);
    for (std::size_t i = 0; i < 4; ++i) {
        num *= at(forms[i]);
    }
    for (std::size_t i = 4; i < 7; ++i) {
        den *= at(forms[i]);
    }
    return laurent_unit<Alg>(forms, {1, 1, 1, 1, -1, -1, -1}, num * invert(den));
}

// The canonical section with unit part truncated below total degree trunc_z and q^trunc_q.
inline q_laurent_unit cube_section(int trunc_z, std::size_t trunc_q)
{
    return cube_section_from_sigma(sigma_series(trunc_z + 1, trunc_q));
}

// f(x,y) = sigma(x+y) / (sigma(x) sigma(y)) in the additive coordinate.
template <typename Alg>
laurent_unit<Alg> two_variable_section(const multi_series<Alg> &sigma)
{
    using series = multi_series<Alg>;
    const series s1 = sigma_unit(sigma);
    const Alg &alg = s1.algebra();
    const int t = s1.trunc();
    const std::vector<std::string> xy{"x", "y"};
    const series x = series::variable(alg, xy, t, "x");
    const series y = series::variable(alg, xy, t, "y");
    const series unit = detail::evaluate_at(s1, {x + y})
                        * invert(detail::evaluate_at(s1, {x}) * detail::evaluate_at(s1, {y}));
    return laurent_unit<Alg>({{1, 1}, {1, 0}, {0, 1}}, {1, -1, -1}, unit);
}

class divisor_mismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct cube_conditions_report {
    condition_result rigid;
    condition_result symmetric;
    condition_result cocycle;

    bool all_pass() const
    {
        return rigid.ok && symmetric.ok && cocycle.ok;
    }
};

// Rigid, symmetric, and s(y,z,v) s(x,y+z,v) = s(x,y,v) s(x+y,z,v) in the additive coordinate.
// Divisors of both sides are compared before any series work; a mismatch throws divisor_mismatch.
template <typename Alg>
cube_conditions_report verify_cube_conditions(const laurent_unit<Alg> &s)
{
    if (s.vars().size() != 3) {
        throw std::invalid_argument("a cube section is a function of three variables");
    }
    const std::vector<std::vector<int>> a{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    const std::vector<std::vector<int>> b{{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}};
    const std::vector<std::vector<int>> c{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    const std::vector<std::vector<int>> d{{1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    auto merged = [&](const std::vector<std::vector<int>> &p, const std::vector<std::vector<int>> &q) {
        auto m = s.substituted_divisors(p, 4);
        for (const auto &[f, v] : s.substituted_divisors(q, 4)) {
            m[f] += v;
            if (m[f] == 0) {
                m.erase(f);
            }
        }
        return m;
    };
    if (merged(a, b) != merged(c, d)) {
        throw divisor_mismatch("the two sides of the cocycle identity have different divisors");
    }
    const std::vector<std::vector<std::vector<int>>> perms{
        {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}},
        {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    for (const auto &p : perms) {
        if (s.substituted_divisors(p, 3) != s.divisors()) {
            throw divisor_mismatch("the divisor of the section is not symmetric");
        }
    }

    cube_conditions_report rep;
    rep.rigid = detail::rigidity(s.unit());
    for (const auto &p : perms) {
        const auto r = detail::compare_condition(s.unit(), s.substitute_linear(p, s.vars()).unit());
        if (!r.ok) {
            rep.symmetric = r;
            break;
        }
    }
    const std::vector<std::string> xyzv{"x", "y", "z", "v"};
    const auto lhs = s.substitute_linear(a, xyzv) * s.substitute_linear(b, xyzv);
    const auto rhs = s.substitute_linear(c, xyzv) * s.substitute_linear(d, xyzv);
    rep.cocycle = detail::compare_condition(lhs.unit(), rhs.unit());
    return rep;
}

// Valuations of a three-variable section along the seven loci plus the constant slot, computed
// through the group law g (the additive law for sections built in the additive coordinate).
template <typename Alg>
divisor_vector divisor_of_section(const laurent_unit<Alg> &s, const formal_group_law<Alg> &g)
{
    if (s.vars().size() != 3) {
        throw std::invalid_argument("divisor vectors are defined for three-variable sections");
    }
    divisor_vector out{};
    const auto &forms = cube_divisor_forms();
    for (std::size_t i = 0; i < forms.size(); ++i) {
        std::vector<std::string> locus;
        for (std::size_t j = 0; j < 3; ++j) {
            if (forms[i][j] != 0) {
                locus.push_back(s.vars()[j]);
            }
        }
        out[i] = valuation_along(s, locus, g);
    }
    out[7] = 0;
    return out;
}

} // namespace tmfcalc

#endif
