#ifndef TMFCALC_SERIES_MONOMIAL_HPP
#define TMFCALC_SERIES_MONOMIAL_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace tmfcalc
{

// Exponent vector of a monomial, one entry per variable.
using exponent = std::vector<int>;

inline int total_degree(const exponent &e)
{
    return std::accumulate(e.begin(), e.end(), 0);
}

// Graded order: total degree first, then x-heavy monomials first within a degree
// (x^2, xy, y^2, ...). "Earliest" failures in reports refer to this order.
struct grlex_order {
    bool operator()(const exponent &a, const exponent &b) const
    {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) {
            return da < db;
        }
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

inline std::string format_exponent(const exponent &e)
{
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i != 0) {
            s += ",";
        }
        s += std::to_string(e[i]);
    }
    return s + ")";
}

// All exponent vectors in nvars variables with total degree exactly d, in grlex order.
inline std::vector<exponent> monomials_of_degree(std::size_t nvars, int d)
{
    std::vector<exponent> out;
    if (nvars == 0) {
        if (d == 0) {
            out.emplace_back();
        }
        return out;
    }
    exponent cur(nvars, 0);
    // recursive fill with the first variable taking the largest share first
    auto rec = [&](auto &&self, std::size_t i, int left) -> void {
        if (i + 1 == nvars) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[i] = a;
            self(self, i + 1, left - a);
        }
    };
    rec(rec, 0, d);
    return out;
}

} // namespace tmfcalc

#endif
