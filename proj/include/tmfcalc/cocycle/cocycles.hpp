#ifndef TMFCALC_COCYCLE_COCYCLES_HPP
#define TMFCALC_COCYCLE_COCYCLES_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/fgl/formal_group.hpp>
#include <tmfcalc/series/laurent.hpp>
#include <tmfcalc/series/multi_series.hpp>

namespace tmfcalc
{

struct condition_result {
    bool ok = true;
    std::optional<exponent> first_failure;
    std::string detail;
};

struct cocycle2_report {
    condition_result rigid;
    condition_result symmetric;
    condition_result cocycle;

    bool all_pass() const
    {
        return rigid.ok && symmetric.ok && cocycle.ok;
    }
};

struct cocycle3_report {
    condition_result rigid;
    condition_result symmetric;
    // pairs (1,2), (1,3), (2,3) with the remaining slot as a parameter
    std::array<condition_result, 3> cocycle;

    bool all_pass() const
    {
        return rigid.ok && symmetric.ok && cocycle[0].ok && cocycle[1].ok && cocycle[2].ok;
    }
};

namespace detail
{

template <typename Alg>
condition_result compare_condition(const multi_series<Alg> &lhs, const multi_series<Alg> &rhs)
{
    condition_result r;
    r.first_failure = earliest_difference(lhs, rhs);
    r.ok = !r.first_failure.has_value();
    return r;
}

template <typename Alg>
void check_candidate(const multi_series<Alg> &f, const formal_group_law<Alg> &g, std::size_t arity)
{
    if (f.nvars() != arity) {
        throw std::invalid_argument("candidate must be a series in " + std::to_string(arity) + " variables");
    }
    if (f.algebra() != g.algebra()) {
        throw ring_mismatch("candidate and formal group law over different rings");
    }
}

template <typename Alg>
condition_result rigidity(const multi_series<Alg> &f)
{
    condition_result r;
    if (!f.algebra().equal(f.constant_term(), f.algebra().one())) {
        r.ok = false;
        r.first_failure = exponent(f.nvars(), 0);
    }
    return r;
}

// f with its slots filled by the given series (all in one target variable set)
template <typename Alg>
multi_series<Alg> evaluate_at(const multi_series<Alg> &f, const std::vector<multi_series<Alg>> &args)
{
    std::map<std::string, multi_series<Alg>> assign;
    for (std::size_t i = 0; i < args.size(); ++i) {
        assign.emplace(f.vars()[i], args[i]);
    }
    // substitute needs zero constant terms; pull the constant out and put it back
    const auto c = f.constant_term();
    auto h = f;
    h.set_term(exponent(f.nvars(), 0), f.algebra().zero());
    auto r = substitute(h, assign);
    r.add_term(exponent(r.nvars(), 0), c);
    return r;
}

} // namespace detail

// Rigid, symmetric, and f(y,z) f(x, y+z) = f(x,y) f(x+y, z) over the group law.
template <typename Alg>
cocycle2_report check_cocycle2(const multi_series<Alg> &f, const formal_group_law<Alg> &g)
{
    using series = multi_series<Alg>;
    detail::check_candidate(f, g, 2);
    cocycle2_report rep;
    rep.rigid = detail::rigidity(f);
    rep.symmetric = detail::compare_condition(f, permute_variables(f, {1, 0}));

    const Alg &alg = f.algebra();
    const int t = std::min(f.trunc(), g.trunc());
    const std::vector<std::string> xyz{"x", "y", "z"};
    const series x = series::variable(alg, xyz, t, "x");
    const series y = series::variable(alg, xyz, t, "y");
    const series z = series::variable(alg, xyz, t, "z");
    const series lhs = detail::evaluate_at(f, {y, z}) * detail::evaluate_at(f, {x, g.add(y, z)});
    const series rhs = detail::evaluate_at(f, {x, y}) * detail::evaluate_at(f, {g.add(x, y), z});
    rep.cocycle = detail::compare_condition(lhs, rhs);
    return rep;
}

// Rigid, invariant under all permutations, and a 2-cocycle in each pair of slots with the
// remaining slot held as a formal parameter v.
template <typename Alg>
cocycle3_report check_cocycle3(const multi_series<Alg> &f, const formal_group_law<Alg> &g)
{
    using series = multi_series<Alg>;
    detail::check_candidate(f, g, 3);
    cocycle3_report rep;
    rep.rigid = detail::rigidity(f);
    const std::vector<std::vector<std::size_t>> perms{{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto &p : perms) {
        auto r = detail::compare_condition(f, permute_variables(f, p));
        if (!r.ok) {
            rep.symmetric = r;
            break;
        }
    }

    const Alg &alg = f.algebra();
    const int t = std::min(f.trunc(), g.trunc());
    const std::vector<std::string> xyzv{"x", "y", "z", "v"};
    const series x = series::variable(alg, xyzv, t, "x");
    const series y = series::variable(alg, xyzv, t, "y");
    const series z = series::variable(alg, xyzv, t, "z");
    const series v = series::variable(alg, xyzv, t, "v");
    const std::array<std::array<std::size_t, 3>, 3> pairs{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto [i, j, other] = pairs[k];
        auto at = [&](const series &a, const series &b) {
            std::vector<series> args(3, v);
            args[i] = a;
            args[j] = b;
            args[other] = v;
            return detail::evaluate_at(f, args);
        };
        const series lhs = at(y, z) * at(x, g.add(y, z));
        const series rhs = at(x, y) * at(g.add(x, y), z);
        rep.cocycle[k] = detail::compare_condition(lhs, rhs);
    }
    return rep;
}

// f(x,y) = g(x +_F y) / (g(x) g(y)) for a one-variable unit g with g(0) = 1.
template <typename Alg>
multi_series<Alg> coboundary(const multi_series<Alg> &gz, const formal_group_law<Alg> &law)
{
    using series = multi_series<Alg>;
    if (gz.nvars() != 1) {
        throw std::invalid_argument("coboundary needs a one-variable series");
    }
    const Alg &alg = gz.algebra();
    if (!alg.equal(gz.constant_term(), alg.one())) {
        throw std::domain_error("coboundary needs a series with constant term 1");
    }
    const int t = std::min(gz.trunc(), law.trunc());
    const std::vector<std::string> xy{"x", "y"};
    const series x = series::variable(alg, xy, t, "x");
    const series y = series::variable(alg, xy, t, "y");
    const series g = gz.truncated(t);
    const series num = detail::evaluate_at(g, {law.add(x, y)});
    const series den = detail::evaluate_at(g, {x}) * detail::evaluate_at(g, {y});
    return num * invert(den);
}

// f(x,y,z) = g(x+y+z) g(x) g(y) g(z) / (g(x+y) g(x+z) g(y+z)), the three-variable analogue.
template <typename Alg>
multi_series<Alg> cube_coboundary(const multi_series<Alg> &gz, const formal_group_law<Alg> &law)
{
    using series = multi_series<Alg>;
    if (gz.nvars() != 1) {
        throw std::invalid_argument("cube coboundary needs a one-variable series");
    }
    const Alg &alg = gz.algebra();
    if (!alg.equal(gz.constant_term(), alg.one())) {
        throw std::domain_error("cube coboundary needs a series with constant term 1");
    }
    const int t = std::min(gz.trunc(), law.trunc());
    const std::vector<std::string> xyz{"x", "y", "z"};
    const series x = series::variable(alg, xyz, t, "x");
    const series y = series::variable(alg, xyz, t, "y");
    const series z = series::variable(alg, xyz, t, "z");
    const series g = gz.truncated(t);
    auto at = [&](const series &a) { return detail::evaluate_at(g, {a}); };
    const series num = at(law.sum({x, y, z})) * at(x) * at(y) * at(z);
    const series den = at(law.add(x, y)) * at(law.add(x, z)) * at(law.add(y, z));
    return num * invert(den);
}

// (1-L2)(1-L3) + (1-L1)(1-L2 L3) = (1-L1)(1-L2) + (1-L1 L2)(1-L3) in Z[L1^{+-1}, L2^{+-1}, L3^{+-1}]
inline bool virtual_bundle_identity()
{
    const laurent_poly one = laurent_poly::constant(3, 1);
    const laurent_poly l1 = laurent_poly::monomial({1, 0, 0}, 1);
    const laurent_poly l2 = laurent_poly::monomial({0, 1, 0}, 1);
    const laurent_poly l3 = laurent_poly::monomial({0, 0, 1}, 1);
    const laurent_poly lhs = (one - l2) * (one - l3) + (one - l1) * (one - l2 * l3);
    const laurent_poly rhs = (one - l1) * (one - l2) + (one - l1 * l2) * (one - l3);
    return lhs == rhs;
}

} // namespace tmfcalc

#endif
