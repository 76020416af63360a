#ifndef TMFCALC_TESTS_SUPPORT_HPP
#define TMFCALC_TESTS_SUPPORT_HPP

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <tmfcalc/tmfcalc.hpp>

namespace tmfcalc
{

inline void PrintTo(const qseries &f, std::ostream *os)
{
    *os << to_text(f);
}

template <typename Alg>
void PrintTo(const multi_series<Alg> &f, std::ostream *os)
{
    *os << to_text(f);
}

} // namespace tmfcalc

namespace testing_support
{

using namespace tmfcalc;

class rng
{
public:
    explicit rng(std::uint64_t seed) : m_gen(seed) {}

    long uniform(long lo, long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(m_gen() % span);
    }

    rational small_rational(long bound = 5, long den_bound = 3)
    {
        rational x(uniform(-bound, bound), uniform(1, den_bound));
        x.canonicalize();
        return x;
    }

    integer small_integer(long bound = 5)
    {
        return uniform(-bound, bound);
    }

private:
    std::mt19937_64 m_gen;
};

inline qseries random_qseries(rng &r, const coeff_ring &ring, std::size_t trunc, bool integral = false)
{
    std::vector<rational> c(trunc);
    for (auto &x : c) {
        x = integral || !ring.is_field_of_fractions() ? rational(r.small_integer()) : r.small_rational();
    }
    return qseries(ring, std::move(c));
}

inline multi_series<scalar_algebra> random_multi(rng &r, const scalar_algebra &alg,
                                                 const std::vector<std::string> &vars, int trunc,
                                                 bool integral = false)
{
    multi_series<scalar_algebra> f(alg, vars, trunc);
    for (int d = 0; d < trunc; ++d) {
        for (const auto &e : monomials_of_degree(vars.size(), d)) {
            if (r.uniform(0, 2) == 0) {
                continue;
            }
            const rational c = integral || !alg.ring.is_field_of_fractions() ? rational(r.small_integer())
                                                                             : r.small_rational();
            f.add_term(e, c);
        }
    }
    return f;
}

// random series with constant term 1
inline multi_series<scalar_algebra> random_unit(rng &r, const scalar_algebra &alg,
                                                const std::vector<std::string> &vars, int trunc,
                                                bool integral = false)
{
    auto f = random_multi(r, alg, vars, trunc, integral);
    f.set_term(exponent(vars.size(), 0), rational(1));
    return f;
}

inline weierstrass_data random_curve(rng &r, long bound = 3)
{
    weierstrass_data c;
    c.a1 = rational(r.small_integer(bound));
    c.a2 = rational(r.small_integer(bound));
    c.a3 = rational(r.small_integer(bound));
    c.a4 = rational(r.small_integer(bound));
    c.a6 = rational(r.small_integer(bound));
    return c;
}

} // namespace testing_support

#endif
