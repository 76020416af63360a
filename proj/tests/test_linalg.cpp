#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace tmfcalc;
using namespace testing_support;

namespace
{

mod_matrix random_matrix(rng &r, std::size_t rows, std::size_t cols, std::int64_t n)
{
    mod_matrix a(rows, std::vector<std::int64_t>(cols));
    for (auto &row : a) {
        for (auto &x : row) {
            x = r.uniform(0, n - 1);
        }
    }
    return a;
}

bool in_kernel(const mod_matrix &a, const std::vector<std::int64_t> &x, std::int64_t n)
{
    for (const auto &row : a) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            s = (s + row[j] * x[j]) % n;
        }
        if (s != 0) {
            return false;
        }
    }
    return true;
}

long brute_kernel(const mod_matrix &a, std::size_t cols, std::int64_t n)
{
    std::vector<std::int64_t> x(cols, 0);
    long count = 0;
    while (true) {
        count += in_kernel(a, x, n) ? 1 : 0;
        std::size_t i = 0;
        while (i < cols && ++x[i] == n) {
            x[i] = 0;
            ++i;
        }
        if (i == cols) {
            return count;
        }
    }
}

// size of the subgroup of (Z/n)^cols spanned by gens
std::size_t span_size(const mod_matrix &gens, std::size_t cols, std::int64_t n)
{
    std::set<std::vector<std::int64_t>> seen{std::vector<std::int64_t>(cols, 0)};
    std::vector<std::vector<std::int64_t>> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto &v : frontier) {
            for (const auto &g : gens) {
                auto w = v;
                for (std::size_t j = 0; j < cols; ++j) {
                    w[j] = (w[j] + g[j]) % n;
                }
                if (seen.insert(w).second) {
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace

TEST(Smith, KernelSizeMatchesEnumeration)
{
    rng r(401);
    for (std::int64_t n : {2, 4, 6, 8, 9, 12}) {
        for (int trial = 0; trial < 15; ++trial) {
            const std::size_t rows = static_cast<std::size_t>(r.uniform(1, 4));
            const std::size_t cols = static_cast<std::size_t>(r.uniform(1, n > 8 ? 3 : 4));
            const auto a = random_matrix(r, rows, cols, n);
            EXPECT_EQ(kernel_size_mod(a, cols, n), integer(brute_kernel(a, cols, n))) << "mod " << n;
        }
    }
}

TEST(Smith, KernelGeneratorsSpanTheKernel)
{
    rng r(402);
    for (std::int64_t n : {4, 6, 12}) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t cols = 3;
            const auto a = random_matrix(r, static_cast<std::size_t>(r.uniform(1, 3)), cols, n);
            const auto gens = kernel_generators_mod(a, cols, n);
            for (const auto &g : gens) {
                EXPECT_TRUE(in_kernel(a, g, n));
            }
            EXPECT_EQ(static_cast<long>(span_size(gens, cols, n)), brute_kernel(a, cols, n));
        }
    }
}

TEST(Smith, DiagonalEntriesDivideTheModulus)
{
    rng r(403);
    const auto d = diagonalize_mod(random_matrix(r, 5, 4, 12), 4, 12);
    for (auto x : d.diag) {
        EXPECT_TRUE(x == 0 || 12 % x == 0) << x;
    }
    EXPECT_THROW(diagonalize_mod({{1}}, 1, 1), std::invalid_argument);
}

TEST(Hermite, RankAndCoordinates)
{
    // rows (2,4,6), (1,1,1), (3,5,7) span a rank 2 lattice
    const int_matrix a{{2, 4, 6}, {1, 1, 1}, {3, 5, 7}};
    const auto h = hermite_rows(a, 3);
    EXPECT_EQ(h.basis.size(), 2u);
    for (const auto &row : a) {
        const auto x = hermite_coordinates(h, row);
        std::vector<integer> back(3, 0);
        for (std::size_t k = 0; k < x.size(); ++k) {
            for (std::size_t j = 0; j < 3; ++j) {
                back[j] += x[k] * h.basis[k][j];
            }
        }
        EXPECT_EQ(back, row);
    }
    EXPECT_THROW(hermite_coordinates(h, {1, 0, 0}), std::domain_error);
    // index of the lattice generated by (2,0) and (0,3) inside Z^2 shows up in the pivots
    const auto d = hermite_rows({{2, 0}, {0, 3}, {4, 6}}, 2);
    EXPECT_EQ(d.basis[0][0] * d.basis[1][1], 6);
}

TEST(Hermite, RankMatchesRationalRankOnRandomMatrices)
{
    rng r(404);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = static_cast<std::size_t>(r.uniform(1, 5)), cols = 4;
        int_matrix a(rows, std::vector<integer>(cols));
        std::vector<std::vector<rational>> q(rows, std::vector<rational>(cols));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                a[i][j] = r.uniform(-2, 2);
                q[i][j] = a[i][j];
            }
        }
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t p = rank;
            while (p < rows && q[p][c] == 0) {
                ++p;
            }
            if (p == rows) {
                continue;
            }
            std::swap(q[p], q[rank]);
            for (std::size_t i = rank + 1; i < rows; ++i) {
                const rational f = q[i][c] / q[rank][c];
                for (std::size_t j = 0; j < cols; ++j) {
                    q[i][j] -= f * q[rank][j];
                }
            }
            ++rank;
        }
        EXPECT_EQ(rank_over_z(a, cols), rank);
    }
}
