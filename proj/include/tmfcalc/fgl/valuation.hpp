#ifndef TMFCALC_FGL_VALUATION_HPP
#define TMFCALC_FGL_VALUATION_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/fgl/formal_group.hpp>
#include <tmfcalc/series/laurent_unit.hpp>
#include <tmfcalc/series/multi_series.hpp>

namespace tmfcalc
{

// Order of vanishing of s along {v = 0}.
template <typename Alg>
int valuation_along(const multi_series<Alg> &s, const std::string &var)
{
    return valuation_in_variable(s, s.index_of(var));
}

// Order of vanishing of s along the locus {F(v_1, ..., v_k) = 0} for the formal sum of the
// listed variables. The last listed variable is replaced through w = F(v_1, ..., v_k).
template <typename Alg>
int valuation_along(const multi_series<Alg> &s, const std::vector<std::string> &locus,
                    const formal_group_law<Alg> &g)
{
    if (locus.empty()) {
        throw std::invalid_argument("empty locus");
    }
    if (locus.size() == 1) {
        return valuation_along(s, locus.front());
    }
    if (s.algebra() != g.algebra()) {
        throw ring_mismatch("series and formal group law over different rings");
    }
    if (s.is_zero()) {
        throw undecidable_valuation("series vanishes to its truncation (total degree < " + std::to_string(s.trunc())
                                    + "); valuation is undecidable");
    }
    const std::string &last = locus.back();
    const std::size_t slot = s.index_of(last);
    std::string wname = "w";
    while (std::find(s.vars().begin(), s.vars().end(), wname) != s.vars().end()) {
        wname += "'";
    }
    std::vector<std::string> target = s.vars();
    target[slot] = wname;
    const int t = std::min(s.trunc(), g.trunc());
    using series = multi_series<Alg>;
    std::vector<series> rest;
    for (std::size_t i = 0; i + 1 < locus.size(); ++i) {
        if (locus[i] == last) {
            throw std::invalid_argument("repeated variable in locus");
        }
        s.index_of(locus[i]);
        rest.push_back(series::variable(g.algebra(), target, t, locus[i]));
    }
    const series w = series::variable(g.algebra(), target, t, wname);
    const series image = g.add(w, g.negate(g.sum(rest)));
    const auto moved = substitute(s.truncated(t), {{last, image}});
    return valuation_in_variable(moved, slot);
}

// Valuation of a LaurentUnit along a locus: label contributions plus the unit's own order.
template <typename Alg>
int valuation_along(const laurent_unit<Alg> &s, const std::vector<std::string> &locus,
                    const formal_group_law<Alg> &g)
{
    const auto &vars = s.vars();
    const int t = s.unit().trunc();
    int v = valuation_along(s.unit(), locus, g);
    for (const auto &[form, mult] : s.divisors()) {
        const auto ell = g.linear_form(vars, form, t);
        v += mult * valuation_along(ell, locus, g);
    }
    return v;
}

} // namespace tmfcalc

#endif
