#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace tmfcalc;
using namespace testing_support;

namespace
{

const std::size_t nq = 10;

using qvec = std::vector<oracle::Q>;

// a_j = 2 G_2j / (2j)!, the z^2j coefficient of log(z / sigma(z))
qvec log_coefficient(int j)
{
    auto g = oracle::g_normalized(2 * j, nq);
    oracle::Q fact = 1;
    for (int i = 2; i <= 2 * j; ++i) {
        fact *= i;
    }
    for (auto &x : g) {
        x = 2 * x / fact;
    }
    return g;
}

qvec add(const qvec &a, const qvec &b, const oracle::Q &s = 1)
{
    qvec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] += s * b[i];
    }
    return r;
}

qvec scale(qvec a, const oracle::Q &s)
{
    for (auto &x : a) {
        x *= s;
    }
    return a;
}

// the genus as a polynomial in the p-numbers, expanded from exp(sum a_j s_j) with Newton's identities
std::map<partition, qvec> genus_oracle(int k)
{
    const qvec a1 = log_coefficient(1);
    switch (k) {
    case 1:
        return {{{1}, a1}};
    case 2: {
        const qvec a2 = log_coefficient(2);
        // a2 (p1^2 - 2 p2) + a1^2 p1^2 / 2
        return {{{1, 1}, add(a2, oracle::mul(a1, a1, nq), oracle::Q(1, 2))}, {{2}, scale(a2, -2)}};
    }
    case 3: {
        const qvec a2 = log_coefficient(2), a3 = log_coefficient(3);
        const qvec a1a2 = oracle::mul(a1, a2, nq), a1c = oracle::mul(oracle::mul(a1, a1, nq), a1, nq);
        // a3 (p1^3 - 3 p1 p2 + 3 p3) + a1 a2 (p1^3 - 2 p1 p2) + a1^3 p1^3 / 6
        return {{{1, 1, 1}, add(add(a3, a1a2), a1c, oracle::Q(1, 6))},
                {{2, 1}, add(scale(a3, -3), a1a2, -2)},
                {{3}, scale(a3, 3)}};
    }
    default:
        throw std::invalid_argument("oracle covers degrees 1..3");
    }
}

pontryagin_data random_numbers(rng &r, int k)
{
    pontryagin_data m;
    m.dim = 4 * k;
    for (const auto &p : partitions_of(k)) {
        m.numbers[p] = r.small_integer(2000);
    }
    return m;
}

qvec evaluate(const std::map<partition, qvec> &poly, const pontryagin_data &m)
{
    qvec acc(nq, 0);
    for (const auto &[p, c] : poly) {
        acc = add(acc, c, oracle::Q(m.number(p)));
    }
    return acc;
}

pontryagin_data sample(const std::string &text)
{
    return parse_pontryagin_string(text);
}

} // namespace

TEST(Pontryagin, ParsingAndValidation)
{
    const auto m = sample("# comment\ndim = 8\np[2] = 1440\np[1,1] = 0\n");
    EXPECT_EQ(m.degree(), 2);
    EXPECT_EQ(m.number({2}), 1440);
    EXPECT_TRUE(m.string_like());
    EXPECT_FALSE(sample("dim = 8\np[1,1] = 4\np[2] = 7\n").string_like());
    try {
        sample("dim = 8\np[2] = 1\np[1,1 = 3\n");
        FAIL() << "expected a parse error";
    } catch (const parse_error &e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(sample("dim = 6\n"), parse_error);
    EXPECT_THROW(sample("p[1] = 2\n"), parse_error);
    EXPECT_THROW(sample("dim = 4\np[1] = 1/2\n"), parse_error);
    EXPECT_THROW(sample("dim = 8\np[3] = 1\n"), parse_error);
    EXPECT_EQ(partitions_of(4).size(), 5u);
}

TEST(Witten, MatchesTheOracleOnRandomData)
{
    rng r(701);
    for (int k = 1; k <= 3; ++k) {
        const auto poly = genus_oracle(k);
        for (int trial = 0; trial < 30; ++trial) {
            const auto m = random_numbers(r, k);
            const auto g = witten_genus(m, nq);
            EXPECT_EQ(g.weight, 2 * k);
            const auto want = evaluate(poly, m);
            for (std::size_t i = 0; i < nq; ++i) {
                EXPECT_EQ(g.qexp[i], want[i]) << "dim " << m.dim << " q^" << i;
            }
        }
    }
}

TEST(Witten, ConstantTermIsAHat)
{
    rng r(702);
    for (int k = 1; k <= 3; ++k) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto m = random_numbers(r, k);
            std::map<std::vector<int>, oracle::Z> p(m.numbers.begin(), m.numbers.end());
            EXPECT_EQ(a_hat(m), oracle::a_hat(k, p));
        }
    }
    EXPECT_EQ(a_hat(sample("dim = 4\np[1] = -48\n")), 2);
    EXPECT_EQ(a_hat(sample("dim = 8\np[1,1] = 4\np[2] = 7\n")), 0);
}

TEST(Witten, FourDimensionalGenusIsAMultipleOfE2)
{
    // -p1 E2 / 24 with E2 = 1 - 24 sum sigma_1(n) q^n
    const auto g = witten_genus(sample("dim = 4\np[1] = -48\n"), nq).qexp;
    EXPECT_EQ(g[0], 2);
    for (unsigned long n = 1; n < nq; ++n) {
        EXPECT_EQ(g[n], -48 * rational(oracle::divisor_sum(1, n)));
    }
}

TEST(Witten, StringLikeDataGiveModularForms)
{
    const auto e4 = witten_genus(sample("dim = 8\np[2] = 1440\n"), nq);
    EXPECT_EQ(e4.qexp, -c4(nq).qexp);
    const auto e6 = witten_genus(sample("dim = 12\np[3] = 60480\n"), nq);
    EXPECT_EQ(e6.qexp, -c6(nq).qexp);

    rng r(703);
    for (int k : {2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto m = random_numbers(r, k);
            for (auto &[p, v] : m.numbers) {
                if (std::find(p.begin(), p.end(), 1) != p.end()) {
                    v = 0;
                }
            }
            const auto rep = modularity_check(m, nq);
            EXPECT_TRUE(rep.all_pass()) << m.dim;
        }
    }
}

TEST(Witten, NonStringDataSeeTheG2Shift)
{
    const auto hp2 = sample("dim = 8\np[1,1] = 4\np[2] = 7\n");
    EXPECT_THROW(modularity_check(hp2, nq), std::invalid_argument);
    EXPECT_NE(witten_genus(hp2, nq).qexp, witten_genus(hp2, nq, rational(1, 7)).qexp);
    // not a modular form either: it involves E2
    EXPECT_FALSE(decompose(witten_genus(hp2, nq).qexp, 4).ok);
}

TEST(Witten, GenusPolynomialCoefficients)
{
    const auto poly = genus_polynomial(2, 3);
    ASSERT_EQ(poly.size(), 2u);
    for (const auto &[mono, c] : poly) {
        const auto p = to_partition(mono);
        if (p == partition{1, 1}) {
            EXPECT_EQ(c[0], rational(7, 5760));
            EXPECT_EQ(format_partition(p), "p[1,1]");
        } else {
            EXPECT_EQ(p, (partition{2}));
            EXPECT_EQ(c[0], rational(-1, 1440));
        }
    }
}

TEST(Div24, RandomPairs)
{
    rng r(704);
    for (int trial = 0; trial < 200; ++trial) {
        const integer alpha = r.uniform(-1000000, 1000000), beta = r.uniform(-1000000, 1000000);
        const auto d = div24_check(alpha, beta);
        EXPECT_EQ(d.q1, 720 * alpha + 24 * beta);
        EXPECT_TRUE(d.divisible);
    }
}
