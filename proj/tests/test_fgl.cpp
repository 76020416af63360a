#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace tmfcalc;
using namespace testing_support;

namespace
{

using ms = multi_series<scalar_algebra>;
using fgl = formal_group_law<scalar_algebra>;

const std::vector<std::string> xy{"x", "y"};

oracle::weierstrass to_oracle(const weierstrass_data &c)
{
    return {c.a1, c.a2, c.a3, c.a4, c.a6};
}

void expect_matches_oracle(const weierstrass_data &c, int trunc)
{
    const auto g = fgl_from_weierstrass(c, coeff_ring::Q(), trunc);
    const auto expected = oracle::weierstrass_law(to_oracle(c), static_cast<std::size_t>(trunc));
    ms want(scalar_algebra(), xy, trunc);
    for (const auto &[ij, v] : expected) {
        want.add_term({ij.first, ij.second}, v);
    }
    EXPECT_EQ(g.law(), want) << "curve " << c.to_string();
}

} // namespace

TEST(StandardLaws, AdditiveAndMultiplicative)
{
    const scalar_algebra q;
    const auto a = fgl::additive(q, 6);
    EXPECT_EQ(to_expression(a.law()), "x + y");
    EXPECT_EQ(to_expression(a.inverse_series()), "-z");
    const auto m = fgl::multiplicative(q, 6);
    EXPECT_EQ(to_expression(m.law()), "x + y - x*y");
    EXPECT_TRUE(verify(a).all_pass());
    EXPECT_TRUE(verify(m).all_pass());
    // z / (z - 1) = -z - z^2 - ...
    EXPECT_EQ(to_expression(m.inverse_series()), "-z - z^2 - z^3 - z^4 - z^5");
}

TEST(Weierstrass, LowDegreeExpansion)
{
    // F = x + y - a1 xy - a2 (x^2 y + x y^2) - 2 a3 (x^3 y + x y^3) + (a1 a2 - 3 a3) x^2 y^2 + O(5)
    const weierstrass_data c{2, 3, 5, 7, 11};
    const auto g = fgl_from_weierstrass(c, coeff_ring::Q(), 5);
    const auto &f = g.law();
    EXPECT_EQ(f.coeff({1, 1}), -2);
    EXPECT_EQ(f.coeff({2, 1}), -3);
    EXPECT_EQ(f.coeff({1, 2}), -3);
    EXPECT_EQ(f.coeff({3, 1}), -10);
    EXPECT_EQ(f.coeff({1, 3}), -10);
    EXPECT_EQ(f.coeff({2, 2}), 2 * 3 - 3 * 5);
    EXPECT_EQ(f.size(), 8u);
}

TEST(Weierstrass, MatchesTheLogarithmOracle)
{
    expect_matches_oracle({0, 0, 0, -1, 0}, 10);
    expect_matches_oracle({1, -1, 1, -10, -20}, 9);
    expect_matches_oracle({rational(1, 2), 0, rational(-2, 3), 1, 5}, 8);
    rng r(201);
    for (int trial = 0; trial < 8; ++trial) {
        expect_matches_oracle(random_curve(r), 8);
    }
}

TEST(Weierstrass, CuspidalCurveGivesTheAdditiveLaw)
{
    const auto g = fgl_from_weierstrass({}, coeff_ring::Q(), 13);
    EXPECT_EQ(g.law(), fgl::additive(scalar_algebra(), 13).law());
    EXPECT_EQ(g.inverse_series(), fgl::additive(scalar_algebra(), 13).inverse_series());
}

TEST(Weierstrass, NodalCurveIsMultiplicativeUpToCoordinate)
{
    // y^2 + xy = x^3
    const auto g = fgl_from_weierstrass({1, 0, 0, 0, 0}, coeff_ring::Q(), 8);
    EXPECT_EQ(g.law().coeff({1, 1}), -1);
    EXPECT_TRUE(verify(g).all_pass());
}

TEST(Weierstrass, ParseCoefficients)
{
    EXPECT_EQ(weierstrass_data::parse("1,-2,1/3,0,5"), (weierstrass_data{1, -2, rational(1, 3), 0, 5}));
    EXPECT_THROW(weierstrass_data::parse("1,2,3"), parse_error);
    EXPECT_THROW(weierstrass_data::parse("1,2,a,4,5"), parse_error);
}

TEST(Verify, ReportsTheEarliestFailingMonomial)
{
    const scalar_algebra z(coeff_ring::Z());
    ms f(z, xy, 5);
    f.add_term({1, 0}, 1);
    f.add_term({0, 1}, 1);
    f.add_term({2, 0}, 1);
    const auto r = verify(fgl::from_series(f));
    EXPECT_FALSE(r.unit.ok);
    EXPECT_EQ(*r.unit.first_failure, (exponent{2, 0}));
    EXPECT_FALSE(r.commutativity.ok);
    EXPECT_FALSE(r.associativity.ok);
    EXPECT_EQ(*r.associativity.first_failure, (exponent{2, 0, 0}));
}

TEST(Verify, NoncommutativeCandidate)
{
    const scalar_algebra q;
    ms f(q, xy, 4);
    f.add_term({1, 0}, 1);
    f.add_term({0, 1}, 1);
    f.add_term({2, 1}, 1);
    const auto r = verify(fgl::from_series(f));
    EXPECT_TRUE(r.unit.ok);
    EXPECT_FALSE(r.commutativity.ok);
    EXPECT_EQ(*r.commutativity.first_failure, (exponent{2, 1}));
}

TEST(FglProperty, RandomIntegralCurvesSatisfyTheAxioms)
{
    rng r(211);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_curve(r);
        EXPECT_TRUE(verify(fgl_from_weierstrass(c, coeff_ring::Z(), 8)).all_pass()) << c.to_string();
        EXPECT_TRUE(verify(fgl_from_weierstrass(c, coeff_ring::residue(12), 7)).all_pass()) << c.to_string();
    }
}

TEST(FglProperty, LogarithmLinearizesTheLaw)
{
    rng r(212);
    const scalar_algebra q;
    for (int trial = 0; trial < 8; ++trial) {
        const auto c = random_curve(r);
        const auto g = fgl_from_weierstrass(c, coeff_ring::Q(), 8);
        const auto l = fgl_log(g);
        const auto lx = substitute(l, std::map<std::string, ms>{{"z", ms::variable(q, xy, 8, "x")}});
        const auto ly = substitute(l, std::map<std::string, ms>{{"z", ms::variable(q, xy, 8, "y")}});
        const auto lf = substitute(l, std::map<std::string, ms>{{"z", g.law()}});
        EXPECT_EQ(lf, lx + ly) << c.to_string();
        // the derivative of the logarithm is the invariant differential
        const auto omega = oracle::invariant_differential(to_oracle(c), 7);
        const auto dl = derivative(l, 0);
        for (int k = 0; k < 7; ++k) {
            EXPECT_EQ(univariate_coeff(dl, k), omega[static_cast<std::size_t>(k)]) << c.to_string() << " z^" << k;
        }
    }
}

TEST(FglProperty, LogarithmOfTheMultiplicativeLaw)
{
    const auto l = fgl_log(fgl::multiplicative(scalar_algebra(), 7));
    for (int k = 1; k < 7; ++k) {
        EXPECT_EQ(univariate_coeff(l, k), rational(1, k));
    }
    EXPECT_THROW(fgl_log(fgl::additive(scalar_algebra(coeff_ring::Z()), 4)), std::domain_error);
}

TEST(FglProperty, ReductionModNCommutesWithTheConstruction)
{
    rng r(213);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = random_curve(r, 6);
        for (long n : {2L, 3L, 10L}) {
            const coeff_ring zn = coeff_ring::residue(n);
            const auto reduced = change_ring(fgl_from_weierstrass(c, coeff_ring::Z(), 8), zn);
            const auto direct = fgl_from_weierstrass(c, zn, 8);
            EXPECT_EQ(reduced.law(), direct.law()) << c.to_string() << " mod " << n;
            EXPECT_EQ(reduced.inverse_series(), direct.inverse_series());
        }
    }
}

TEST(FglProperty, NegationIsAnInvolution)
{
    rng r(214);
    const scalar_algebra q;
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = fgl_from_weierstrass(random_curve(r), coeff_ring::Q(), 9);
        const auto z = ms::variable(q, {"z"}, 9, "z");
        EXPECT_EQ(g.negate(g.negate(z)), z);
    }
}

TEST(Weierstrass, CacheReturnsConsistentTruncations)
{
    const weierstrass_data c{0, 1, 0, 2, 0};
    const auto big = fgl_from_weierstrass(c, coeff_ring::Q(), 10);
    const auto small = fgl_from_weierstrass(c, coeff_ring::Q(), 6);
    EXPECT_EQ(small.law(), big.law().truncated(6));
    EXPECT_EQ(small.trunc(), 6);
}
