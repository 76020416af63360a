#ifndef TMFCALC_FGL_WEIERSTRASS_HPP
#define TMFCALC_FGL_WEIERSTRASS_HPP

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/fgl/formal_group.hpp>
#include <tmfcalc/series/multi_series.hpp>
#include <tmfcalc/series/text_format.hpp>

namespace tmfcalc
{

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct weierstrass_data {
    rational a1, a2, a3, a4, a6;

    std::array<rational, 5> coefficients() const
    {
        return {a1, a2, a3, a4, a6};
    }

    std::string to_string() const
    {
        std::string s;
        for (const auto &c : coefficients()) {
            if (!s.empty()) {
                s += ",";
            }
            s += c.get_str();
        }
        return s;
    }

    // "a1,a2,a3,a4,a6" with integer or rational entries
    static weierstrass_data parse(const std::string &text)
    {
        const auto parts = detail::split(text, ',');
        if (parts.size() != 5) {
            throw parse_error("a curve needs exactly five coefficients a1,a2,a3,a4,a6, got "
                              + std::to_string(parts.size()));
        }
        weierstrass_data w;
        w.a1 = detail::parse_rational(parts[0]);
        w.a2 = detail::parse_rational(parts[1]);
        w.a3 = detail::parse_rational(parts[2]);
        w.a4 = detail::parse_rational(parts[3]);
        w.a6 = detail::parse_rational(parts[4]);
        return w;
    }

    friend bool operator==(const weierstrass_data &a, const weierstrass_data &b)
    {
        return a.coefficients() == b.coefficients();
    }
};

// w(z) = z^3 (1 + a1 z + ...), the expansion of -1/y in the coordinate z = -x/y.
inline multi_series<scalar_algebra> weierstrass_w(const weierstrass_data &c, const scalar_algebra &alg, int trunc)
{
    using series = multi_series<scalar_algebra>;
    const std::vector<std::string> vz{"z"};
    const series z = series::variable(alg, vz, trunc, "z");
    const series z2 = z * z;
    const series z3 = z2 * z;
    const auto a1 = alg.from_rational(c.a1), a2 = alg.from_rational(c.a2), a3 = alg.from_rational(c.a3),
               a4 = alg.from_rational(c.a4), a6 = alg.from_rational(c.a6);
    series w(alg, vz, trunc);
    // each pass fixes at least one more degree
    for (int k = 0; k < trunc; ++k) {
        const series w2 = w * w;
        series next = z3;
        next += (z * w).scaled(a1);
        next += (z2 * w).scaled(a2);
        next += w2.scaled(a3);
        next += (z * w2).scaled(a4);
        next += (w2 * w).scaled(a6);
        if (next == w) {
            break;
        }
        w = std::move(next);
    }
    return w;
}

// Formal inverse i(z) = -z / (1 - a1 z - a3 w(z)).
inline multi_series<scalar_algebra> weierstrass_inverse(const weierstrass_data &c, const scalar_algebra &alg,
                                                        int trunc)
{
    using series = multi_series<scalar_algebra>;
    const series w = weierstrass_w(c, alg, trunc);
    const series z = series::variable(alg, {"z"}, trunc, "z");
    series den = series::one(alg, {"z"}, trunc);
    den -= z.scaled(alg.from_rational(c.a1));
    den -= w.scaled(alg.from_rational(c.a3));
    return -(z * invert(den));
}

namespace detail
{

inline formal_group_law<scalar_algebra> build_weierstrass_fgl(const weierstrass_data &c, const scalar_algebra &alg,
                                                              int trunc)
{
    using series = multi_series<scalar_algebra>;
    const std::vector<std::string> xy{"x", "y"};
    const auto a1 = alg.from_rational(c.a1), a2 = alg.from_rational(c.a2), a3 = alg.from_rational(c.a3),
               a4 = alg.from_rational(c.a4), a6 = alg.from_rational(c.a6);

    // lambda needs A_n for n <= trunc
    const series w = weierstrass_w(c, alg, trunc + 1);
    const series x = series::variable(alg, xy, trunc, "x");
    const series y = series::variable(alg, xy, trunc, "y");

    // slope of the chord: sum A_n (y^n - x^n)/(y - x)
    series lambda(alg, xy, trunc);
    for (const auto &[e, a] : w.terms()) {
        const int n = e[0];
        for (int i = 0; i < n; ++i) {
            lambda.add_term({i, n - 1 - i}, a);
        }
    }
    const series wx = embed(w, xy, {0}).truncated(trunc);
    const series nu = wx - lambda * x;

    const series l2 = lambda * lambda;
    const series l3 = l2 * lambda;
    const series lnu = lambda * nu;
    // third root of the cubic cut out by the chord w = lambda z + nu
    series num = lambda.scaled(a1);
    num += l2.scaled(a3);
    num += nu.scaled(a2);
    num += lnu.scaled(alg.mul(alg.from_rational(2), a4));
    num += (l2 * nu).scaled(alg.mul(alg.from_rational(3), a6));
    series den = series::one(alg, xy, trunc);
    den += lambda.scaled(a2);
    den += l2.scaled(a4);
    den += l3.scaled(a6);
    const series z3 = -(num * invert(den)) - x - y;

    const series iota = weierstrass_inverse(c, alg, trunc);
    series law = substitute(iota, {{"z", z3}});
    return formal_group_law<scalar_algebra>(std::move(law), iota);
}

} // namespace detail

// Formal group law of the curve in the coordinate z = -x/y, truncated at total degree trunc.
// Results are memoized per (curve, ring); a cached higher-order expansion is truncated on reuse.
inline formal_group_law<scalar_algebra> fgl_from_weierstrass(const weierstrass_data &c, const coeff_ring &ring,
                                                             int trunc)
{
    static std::mutex mu;
    static std::map<std::string, formal_group_law<scalar_algebra>> cache;
    const std::string key = ring.to_string() + "|" + c.to_string();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end() && it->second.trunc() >= trunc) {
            return it->second.trunc() == trunc ? it->second : it->second.truncated(trunc);
        }
    }
    const scalar_algebra alg(ring);
    auto g = detail::build_weierstrass_fgl(c, alg, trunc);
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[key];
    if (slot.trunc() < trunc) {
        slot = g;
    }
    return g;
}

} // namespace tmfcalc

#endif
