#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace tmfcalc;
using namespace testing_support;

namespace
{

const std::size_t nq = 17;

qseries from_oracle(const std::vector<oracle::Q> &c)
{
    return qseries(coeff_ring::Q(), std::vector<rational>(c.begin(), c.end()));
}

qseries delta_oracle(std::size_t n)
{
    const auto t = oracle::ramanujan_tau(n);
    return from_oracle(std::vector<oracle::Q>(t.begin(), t.end()));
}

qseries power(const qseries &f, int e)
{
    qseries r = qseries::constant(coeff_ring::Q(), f.trunc(), 1);
    for (int i = 0; i < e; ++i) {
        r = r * f;
    }
    return r;
}

// c4^a c6^b Delta^c assembled from the oracles
qseries oracle_monomial(const basis_monomial &m, std::size_t n)
{
    return power(from_oracle(oracle::eisenstein(4, n)), m.a) * power(from_oracle(oracle::eisenstein(6, n)), m.b)
           * power(delta_oracle(n), m.c);
}

} // namespace

TEST(ModularForms, DeltaMatchesTheEulerProductOracle)
{
    const auto d = delta(nq).qexp;
    EXPECT_EQ(d, delta_oracle(nq));
    EXPECT_EQ(d[1], 1);
    EXPECT_EQ(d[2], -24);
    EXPECT_EQ(d[3], 252);
    EXPECT_EQ(d[16], 987136);
}

TEST(ModularForms, EisensteinMatchesTheDivisorSumOracle)
{
    for (int k : {4, 6, 8, 10, 12, 14, 16}) {
        EXPECT_EQ(eisenstein(k, nq).qexp, from_oracle(oracle::eisenstein(k, nq))) << k;
    }
    EXPECT_EQ(c4(5).qexp[1], 240);
    EXPECT_EQ(c6(5).qexp[1], -504);
    EXPECT_EQ(bernoulli(12), rational(-691, 2730));
    EXPECT_EQ(divisor_sigma(3, 12), 2044);
}

TEST(ModularForms, CubicRelation)
{
    const auto e4 = c4(nq).qexp, e6 = c6(nq).qexp;
    EXPECT_EQ(e4 * e4 * e4 - e6 * e6, delta(nq).qexp * rational(1728));
    // products of Eisenstein series that must coincide
    EXPECT_EQ(e4 * e4, eisenstein(8, nq).qexp);
    EXPECT_EQ(e4 * e6, eisenstein(10, nq).qexp);
}

TEST(ModularForms, BasisShapes)
{
    EXPECT_EQ(mf_basis_monomials(0).size(), 1u);
    EXPECT_EQ(mf_basis_monomials(2).size(), 0u);
    EXPECT_EQ(mf_basis_monomials(12).size(), 2u);
    EXPECT_EQ(mf_basis_monomials(24).size(), 3u);
    // dim M_k = floor(k/12) + (k mod 12 != 2)
    for (int k = 0; k <= 48; k += 2) {
        const std::size_t dim = static_cast<std::size_t>(k / 12 + (k % 12 == 2 ? 0 : 1));
        EXPECT_EQ(mf_basis_monomials(k).size(), dim) << k;
    }
    EXPECT_EQ(format_basis_monomial({3, 0, 0}), "c4^3");
    EXPECT_EQ(format_basis_monomial({0, 0, 0}), "1");
    EXPECT_THROW(mf_basis_monomials(3), std::invalid_argument);
}

TEST(Decompose, RecoversRandomCombinations)
{
    rng r(601);
    for (int k = 0; k <= 24; k += 2) {
        const auto monos = mf_basis_monomials(k);
        if (monos.empty()) {
            continue;
        }
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<rational> coords;
            qseries f(coeff_ring::Q(), nq);
            for (const auto &m : monos) {
                coords.push_back(r.small_rational(20, 6));
                f += oracle_monomial(m, nq) * coords.back();
            }
            const auto d = decompose(f, k);
            ASSERT_TRUE(d.ok) << k;
            EXPECT_EQ(d.coords, coords);
            // a perturbation past the determined coefficients is inconsistent exactly there
            const std::size_t n = static_cast<std::size_t>(r.uniform(static_cast<long>(monos.size()), nq - 1));
            auto g = f;
            g.set(n, g[n] + 1);
            const auto bad = decompose(g, k);
            EXPECT_FALSE(bad.ok);
            EXPECT_EQ(bad.inconsistent, n);
        }
    }
}

TEST(Decompose, NeedsEnoughPrecision)
{
    EXPECT_THROW(decompose(delta(2).qexp, 12), precision_error);
    EXPECT_TRUE(decompose(delta(3).qexp, 12).ok);
}

TEST(Image24, MembershipExamples)
{
    const auto e4 = c4(nq).qexp, d = delta(nq).qexp;
    const auto c43 = e4 * e4 * e4;
    const auto m1 = mf12_membership(c43);
    EXPECT_TRUE(m1.member);
    EXPECT_EQ(m1.alpha, 1);
    EXPECT_EQ(m1.beta, 0);
    EXPECT_FALSE(mf12_membership(d).member);
    EXPECT_TRUE(mf12_membership(d * rational(24)).member);
    EXPECT_FALSE(mf12_membership(c43 * rational(1, 2)).member);
    EXPECT_THROW(mf12_membership(d + qseries::monomial(coeff_ring::Q(), nq, 11, 1)), std::domain_error);
}

TEST(Image24, SubgroupOfIndex24)
{
    const auto c43 = power(c4(nq).qexp, 3), d = delta(nq).qexp;
    rng r(602);
    for (int trial = 0; trial < 50; ++trial) {
        const long a1 = r.uniform(-50, 50), a2 = r.uniform(-50, 50);
        const long b1 = 24 * r.uniform(-9, 9), b2 = 24 * r.uniform(-9, 9);
        const auto f = c43 * rational(a1) + d * rational(b1);
        const auto g = c43 * rational(a2) + d * rational(b2);
        EXPECT_TRUE(mf12_membership(f + g).member);
        EXPECT_TRUE(mf12_membership(-f).member);
    }
    // cosets of Z c4^3 + Z Delta modulo the subgroup: exactly one beta residue in 24 is a member
    int members = 0;
    for (long b = 0; b < 48; ++b) {
        members += mf12_membership(c43 + d * rational(b)).member ? 1 : 0;
    }
    EXPECT_EQ(members, 2);
}
