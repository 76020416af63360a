#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace tmfcalc;
using namespace testing_support;

namespace
{

using bseries = std::vector<std::vector<rational>>; // [z-degree][q-degree]

// exp(-sum_k 2 G_2k z^2k / (2k)!) with the G_2k from the divisor-sum oracle, below z^nz and q^nq
bseries sigma_unit_oracle(std::size_t nz, std::size_t nq)
{
    bseries a(nz, std::vector<rational>(nq, 0));
    rational fact = 1;
    for (std::size_t k = 1; k < nz; ++k) {
        fact *= static_cast<long>(k);
        if (k % 2 == 0) {
            const auto g = oracle::g_normalized(static_cast<int>(k), nq);
            for (std::size_t m = 0; m < nq; ++m) {
                a[k][m] = -2 * g[m] / fact;
            }
        }
    }
    // E' = A' E, so n E_n = sum_k k A_k E_{n-k}
    bseries e(nz, std::vector<rational>(nq, 0));
    e[0][0] = 1;
    for (std::size_t n = 1; n < nz; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            const auto prod = oracle::mul(a[k], e[n - k], nq);
            for (std::size_t m = 0; m < nq; ++m) {
                e[n][m] += static_cast<long>(k) * prod[m] / static_cast<long>(n);
            }
        }
    }
    return e;
}

rational sigma_coeff(const q_multi_series &sigma, int k, std::size_t m)
{
    return sigma.coeff({k}).coeff(m);
}

// sigma(z) = e^(z/2) Theta(e^z), compared coefficientwise
bool consistent_with_theta(const q_multi_series &sigma, const laurent_qseries &theta)
{
    const std::size_t nq = std::min(sigma.algebra().trunc, theta.trunc());
    rational fact = 1;
    for (int k = 0; k < sigma.trunc(); ++k) {
        if (k > 0) {
            fact *= k;
        }
        for (std::size_t m = 0; m < nq; ++m) {
            rational want = 0;
            for (const auto &[e, c] : theta.layer(m).terms()) {
                rational p = 1;
                for (int i = 0; i < k; ++i) {
                    p *= rational(2 * e[0] + 1) / 2;
                }
                want += rational(c) * p;
            }
            if (sigma_coeff(sigma, k, m) != want / fact) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST(Theta, MatchesTheTripleProductOracle)
{
    const std::size_t n = 12;
    const auto t = theta_u(n);
    const auto layers = oracle::theta_triple_product(n);
    for (std::size_t m = 0; m < n; ++m) {
        laurent_poly want(1);
        for (const auto &[e, c] : layers[m]) {
            want.add_term({e}, c);
        }
        EXPECT_EQ(t.layer(m), want) << "q^" << m;
    }
    EXPECT_THROW(theta_u(0), std::invalid_argument);
}

TEST(Theta, QuasiPeriodicAtEveryTruncation)
{
    for (std::size_t n = 2; n <= 12; ++n) {
        EXPECT_TRUE(quasi_periodicity_check(theta_u(n)).ok) << n;
    }
}

TEST(Theta, CubeProductIsInvariant)
{
    for (std::size_t n = 2; n <= 8; ++n) {
        const auto r = cube_invariance_check(n);
        EXPECT_TRUE(r.all_pass()) << n << " " << r.failure;
    }
}

TEST(Theta, MultiplierBookkeeping)
{
    const auto m = shift_multiplier(cube_numerator_factors(), 0, 3);
    EXPECT_EQ(m.sign, 1);
    EXPECT_EQ(m.q_shift, 2);
    EXPECT_EQ(m.u_shift, (std::vector<int>{2, 1, 1}));
    EXPECT_EQ(m, shift_multiplier(cube_denominator_factors(), 0, 3));
    EXPECT_THROW(shift_multiplier({{2, 0, 0}}, 0, 3), std::invalid_argument);
}

TEST(ThetaMutation, SingleCoefficientChangesBreakQuasiPeriodicity)
{
    rng r(501);
    const std::size_t n = 10;
    const auto theta = theta_u(n);
    for (int trial = 0; trial < 60; ++trial) {
        const long m = r.uniform(0, static_cast<long>(n) - 1);
        const int a = static_cast<int>(r.uniform(-m - 1, m));
        long delta = 0;
        while (delta == 0) {
            delta = r.uniform(-3, 3);
        }
        auto bad = theta;
        bad.layer(static_cast<std::size_t>(m)).add_term({a}, delta);
        EXPECT_FALSE(quasi_periodicity_check(bad).ok) << "q^" << m << " u^" << a;
    }
}

TEST(ThetaMutation, CubeCheckCatchesMutatedTheta)
{
    rng r(502);
    const std::size_t n = 6;
    const auto theta = theta_u(n);
    for (int trial = 0; trial < 10; ++trial) {
        const long m = r.uniform(0, static_cast<long>(n) - 1);
        const int a = static_cast<int>(r.uniform(-m - 1, m));
        auto bad = theta;
        bad.layer(static_cast<std::size_t>(m)).add_term({a}, 1);
        EXPECT_FALSE(cube_invariance_check(bad).all_pass()) << "q^" << m << " u^" << a;
    }
}

TEST(Sigma, MatchesTheEisensteinExponential)
{
    const int nz = 10;
    const std::size_t nq = 8;
    const auto sigma = sigma_series(nz, nq);
    const auto want = sigma_unit_oracle(static_cast<std::size_t>(nz - 1), nq);
    for (int k = 1; k < nz; ++k) {
        for (std::size_t m = 0; m < nq; ++m) {
            EXPECT_EQ(sigma_coeff(sigma, k, m), want[static_cast<std::size_t>(k - 1)][m]) << "z^" << k << " q^" << m;
        }
    }
}

TEST(Sigma, OddAndDegeneratesToSinh)
{
    const auto sigma = sigma_series(12, 6);
    rational fact = 1;
    for (int k = 0; k < 12; ++k) {
        if (k > 0) {
            fact *= k;
        }
        for (std::size_t m = 0; m < 6; ++m) {
            if (k % 2 == 0) {
                EXPECT_EQ(sigma_coeff(sigma, k, m), 0);
            }
        }
        rational sinh = 0;
        if (k % 2 == 1) {
            sinh = 1 / fact;
            for (int j = 1; j < k; ++j) {
                sinh /= 2;
            }
        }
        EXPECT_EQ(sigma_coeff(sigma, k, 0), sinh) << k;
    }
    EXPECT_THROW(sigma_series(1, 4), std::invalid_argument);
}

TEST(Sigma, AgreesWithThetaOfTheExponential)
{
    EXPECT_TRUE(consistent_with_theta(sigma_series(10, 8), theta_u(8)));
}

TEST(SigmaMutation, SingleCoefficientChangesBreakThetaConsistency)
{
    rng r(503);
    const auto sigma = sigma_series(9, 7);
    const auto theta = theta_u(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = static_cast<int>(r.uniform(0, 8));
        const std::size_t m = static_cast<std::size_t>(r.uniform(0, 6));
        rational delta = 0;
        while (delta == 0) {
            delta = r.small_rational(3, 4);
        }
        auto bad = sigma;
        bad.add_term({k}, qseries::monomial(coeff_ring::Q(), 7, m, delta));
        EXPECT_FALSE(consistent_with_theta(bad, theta)) << "z^" << k << " q^" << m;
    }
}

TEST(CubeSection, ConditionsAndDivisor)
{
    const auto s = cube_section(7, 5);
    const auto rep = verify_cube_conditions(s);
    EXPECT_TRUE(rep.all_pass());
    const auto g = formal_group_law<qseries_algebra>::additive(s.unit().algebra(), s.unit().trunc());
    EXPECT_EQ(divisor_of_section(s, g), expected_cube_divisor());
    EXPECT_EQ(format_divisor_vector(expected_cube_divisor()), "(+1,+1,+1,+1,-1,-1,-1,0)");
}

TEST(CubeSection, AnyOddSigmaGivesACubeSection)
{
    // the conditions are structural: a perturbed sigma still yields a valid section
    auto sigma = sigma_series(7, 3);
    sigma.add_term({3}, qseries::constant(coeff_ring::Q(), 3, 5));
    EXPECT_TRUE(verify_cube_conditions(cube_section_from_sigma(sigma)).all_pass());
}

TEST(CubeSection, UnitMutationsAreDetected)
{
    rng r(504);
    const auto s = cube_section(7, 3);
    const auto &unit = s.unit();
    const auto &forms = cube_divisor_forms();
    std::vector<exponent> pool;
    for (int d = 0; d < unit.trunc(); ++d) {
        for (const auto &e : monomials_of_degree(3, d)) {
            pool.push_back(e);
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        const auto &e = pool[static_cast<std::size_t>(r.uniform(0, static_cast<long>(pool.size()) - 1))];
        auto bad = unit;
        bad.add_term(e, qseries::monomial(coeff_ring::Q(), 3, static_cast<std::size_t>(r.uniform(0, 2)), 1));
        const q_laurent_unit t(forms, {1, 1, 1, 1, -1, -1, -1}, bad);
        EXPECT_FALSE(verify_cube_conditions(t).all_pass());
    }
}

TEST(CubeSection, DivisorMismatchIsReported)
{
    const auto s = cube_section(4, 2);
    const q_laurent_unit t(cube_divisor_forms(), {1, 1, 1, 1, -1, -1, 0}, s.unit());
    EXPECT_THROW(verify_cube_conditions(t), divisor_mismatch);
}
