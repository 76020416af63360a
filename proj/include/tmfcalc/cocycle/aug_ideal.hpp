#ifndef TMFCALC_COCYCLE_AUG_IDEAL_HPP
#define TMFCALC_COCYCLE_AUG_IDEAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/linalg/smith.hpp>

namespace tmfcalc
{

// Gamma = Z/n_1 x ... x Z/n_r with coefficients A = Z/N.
struct finite_group_spec {
    std::vector<int> orders;
    std::int64_t modulus = 2;

    std::size_t group_order() const
    {
        std::size_t g = 1;
        for (int n : orders) {
            g *= static_cast<std::size_t>(n);
        }
        return g;
    }
};

struct aug_ideal_report {
    std::size_t group_order = 0;
    int power = 0;
    std::size_t ideal_rank = 0;  // rank of I^power as a free abelian group
    integer module_maps;         // |Hom(I^power, Z/N)|
    integer cocycle_functions;   // rigid symmetric cocycle functions Gamma^power -> Z/N
    bool enumerated = false;     // counted by exhaustive enumeration as well
    integer enumerated_count;
    bool counts_agree = false;
    bool map_lands_in_solutions = false;
    bool map_injective = false;
    bool bijection = false;
};

inline constexpr std::size_t aug_ideal_max_group = 64;
inline constexpr std::size_t aug_ideal_max_cells = 256;

namespace detail
{

class finite_abelian
{
public:
    explicit finite_abelian(std::vector<int> orders) : m_orders(std::move(orders))
    {
        m_size = 1;
        for (int n : m_orders) {
            m_size *= static_cast<std::size_t>(n);
        }
    }
    std::size_t size() const
    {
        return m_size;
    }
    std::size_t add(std::size_t a, std::size_t b) const
    {
        std::size_t r = 0, mul = 1;
        for (int n : m_orders) {
            const std::size_t un = static_cast<std::size_t>(n);
            r += ((a % un + b % un) % un) * mul;
            a /= un;
            b /= un;
            mul *= un;
        }
        return r;
    }

private:
    std::vector<int> m_orders;
    std::size_t m_size = 1;
};

// index of a tuple in Gamma^k, first coordinate fastest
inline std::size_t tuple_index(const std::vector<std::size_t> &t, std::size_t g)
{
    std::size_t idx = 0, mul = 1;
    for (std::size_t x : t) {
        idx += x * mul;
        mul *= g;
    }
    return idx;
}

inline std::vector<std::size_t> tuple_at(std::size_t idx, std::size_t g, int k)
{
    std::vector<std::size_t> t(static_cast<std::size_t>(k));
    for (auto &x : t) {
        x = idx % g;
        idx /= g;
    }
    return t;
}

// Linear conditions on f: Gamma^k -> Z/N, one row per condition.
inline mod_matrix cocycle_conditions(const finite_abelian &grp, int k)
{
    const std::size_t g = grp.size();
    std::size_t cells = 1;
    for (int i = 0; i < k; ++i) {
        cells *= g;
    }
    mod_matrix rows;
    auto row = [&]() -> std::vector<std::int64_t> & {
        rows.emplace_back(cells, 0);
        return rows.back();
    };
    // rigid: f(e, ..., e) = 0
    row()[0] = 1;
    // symmetric under adjacent transpositions
    for (std::size_t idx = 0; idx < cells; ++idx) {
        auto t = tuple_at(idx, g, k);
        for (int i = 0; i + 1 < k; ++i) {
            auto s = t;
            std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
            const std::size_t j = tuple_index(s, g);
            if (j > idx) {
                auto &r = row();
                r[idx] += 1;
                r[j] -= 1;
            }
        }
    }
    // f(y,z) + f(x,y+z) - f(x,y) - f(x+y,z) = 0 in each pair of slots, others held fixed
    std::vector<std::size_t> slots(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            const std::size_t others = cells / (g * g);
            for (std::size_t o = 0; o < others; ++o) {
                const auto rest = tuple_at(o, g, k - 2);
                auto fill = [&](std::size_t u, std::size_t v) {
                    std::size_t ri = 0;
                    for (int s = 0; s < k; ++s) {
                        if (s == a) {
                            slots[static_cast<std::size_t>(s)] = u;
                        } else if (s == b) {
                            slots[static_cast<std::size_t>(s)] = v;
                        } else {
                            slots[static_cast<std::size_t>(s)] = rest[ri++];
                        }
                    }
                    return tuple_index(slots, g);
                };
                for (std::size_t x = 0; x < g; ++x) {
                    for (std::size_t y = 0; y < g; ++y) {
                        for (std::size_t z = 0; z < g; ++z) {
                            std::vector<std::int64_t> r(cells, 0);
                            r[fill(y, z)] += 1;
                            r[fill(x, grp.add(y, z))] += 1;
                            r[fill(x, y)] -= 1;
                            r[fill(grp.add(x, y), z)] -= 1;
                            bool nonzero = false;
                            for (auto c : r) {
                                nonzero = nonzero || c != 0;
                            }
                            if (nonzero) {
                                rows.push_back(std::move(r));
                            }
                        }
                    }
                }
            }
        }
    }
    return rows;
}

// prod_i (x_i - e) in Z[Gamma]
inline std::vector<integer> augmentation_product(const finite_abelian &grp, const std::vector<std::size_t> &xs)
{
    const std::size_t g = grp.size();
    std::vector<integer> acc(g, 0);
    acc[0] = 1;
    for (std::size_t x : xs) {
        std::vector<integer> next(g, 0);
        for (std::size_t h = 0; h < g; ++h) {
            if (acc[h] == 0) {
                continue;
            }
            next[grp.add(h, x)] += acc[h];
            next[h] -= acc[h];
        }
        acc = std::move(next);
    }
    return acc;
}

inline bool satisfies_all(const mod_matrix &rows, const std::vector<std::int64_t> &f, std::int64_t n)
{
    for (const auto &r : rows) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (r[i] != 0) {
                s = mod_reduce(s + r[i] * f[i], n);
            }
        }
        if (s != 0) {
            return false;
        }
    }
    return true;
}

} // namespace detail

// Compares module maps I^power -> Z/N with rigid symmetric cocycle functions Gamma^power -> Z/N
// and checks that h |-> (x_1, ..., x_k) |-> h(prod (x_i - e)) is a bijection between them.
inline aug_ideal_report aug_ideal_correspondence(const finite_group_spec &spec, int power)
{
    if (power != 2 && power != 3) {
        throw std::invalid_argument("power must be 2 or 3");
    }
    if (spec.modulus < 2) {
        throw std::invalid_argument("coefficient modulus must be at least 2");
    }
    for (int n : spec.orders) {
        if (n < 1) {
            throw std::invalid_argument("cyclic orders must be positive");
        }
    }
    const detail::finite_abelian grp(spec.orders);
    const std::size_t g = grp.size();
    if (g > aug_ideal_max_group) {
        throw std::invalid_argument("group of order " + std::to_string(g) + " exceeds the bound "
                                    + std::to_string(aug_ideal_max_group));
    }
    std::size_t cells = 1;
    for (int i = 0; i < power; ++i) {
        cells *= g;
    }
    if (cells > aug_ideal_max_cells) {
        throw std::invalid_argument("|Gamma|^power = " + std::to_string(cells) + " exceeds the bound "
                                    + std::to_string(aug_ideal_max_cells));
    }
    const std::int64_t n = spec.modulus;

    aug_ideal_report rep;
    rep.group_order = g;
    rep.power = power;

    // (a) I^power is spanned by the products; it is a sublattice of Z[Gamma], hence free
    int_matrix gens;
    gens.reserve(cells);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        gens.push_back(detail::augmentation_product(grp, detail::tuple_at(idx, g, power)));
    }
    const auto herm = hermite_rows(gens, g);
    rep.ideal_rank = herm.basis.size();
    mpz_pow_ui(rep.module_maps.get_mpz_t(), integer(n).get_mpz_t(), rep.ideal_rank);

    // (b) solutions of the linear conditions
    const mod_matrix cond = detail::cocycle_conditions(grp, power);
    rep.cocycle_functions = kernel_size_mod(cond, cells, n);
    rep.counts_agree = rep.module_maps == rep.cocycle_functions;

    double space = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        space *= static_cast<double>(n);
    }
    if (space <= 1 << 20) {
        rep.enumerated = true;
        std::vector<std::int64_t> f(cells, 0);
        integer count = 0;
        while (true) {
            if (detail::satisfies_all(cond, f, n)) {
                ++count;
            }
            std::size_t i = 0;
            while (i < cells && ++f[i] == n) {
                f[i] = 0;
                ++i;
            }
            if (i == cells) {
                break;
            }
        }
        rep.enumerated_count = count;
        rep.counts_agree = rep.counts_agree && count == rep.cocycle_functions;
    }

    // explicit map: Phi[cell][j] = coordinate j of the product in the Hermite basis
    mod_matrix phi(cells, std::vector<std::int64_t>(rep.ideal_rank, 0));
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const auto x = hermite_coordinates(herm, gens[idx]);
        for (std::size_t j = 0; j < x.size(); ++j) {
            integer r;
            mpz_fdiv_r_ui(r.get_mpz_t(), x[j].get_mpz_t(), static_cast<unsigned long>(n));
            phi[idx][j] = r.get_si();
        }
    }
    // C Phi = 0 mod N: every h lands in the solution set
    rep.map_lands_in_solutions = true;
    for (const auto &row : cond) {
        for (std::size_t j = 0; j < rep.ideal_rank && rep.map_lands_in_solutions; ++j) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < cells; ++i) {
                if (row[i] != 0) {
                    s = detail::mod_reduce(s + row[i] * phi[i][j], n);
                }
            }
            rep.map_lands_in_solutions = s == 0;
        }
        if (!rep.map_lands_in_solutions) {
            break;
        }
    }
    rep.map_injective = rep.ideal_rank == 0 || kernel_size_mod(phi, rep.ideal_rank, n) == 1;
    rep.bijection = rep.map_lands_in_solutions && rep.map_injective && rep.counts_agree;
    return rep;
}

} // namespace tmfcalc

#endif
