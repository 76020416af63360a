#ifndef TMFCALC_LINALG_SMITH_HPP
#define TMFCALC_LINALG_SMITH_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <tmfcalc/core/ring.hpp>

namespace tmfcalc
{

using mod_matrix = std::vector<std::vector<std::int64_t>>;
using int_matrix = std::vector<std::vector<integer>>;

namespace detail
{

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n)
{
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % n);
}

// g = gcd(a, b) = s a + t b
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t &s, std::int64_t &t)
{
    std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    s = s0;
    t = t0;
    return a;
}

inline std::int64_t inverse_mod_int(std::int64_t a, std::int64_t n)
{
    std::int64_t s = 0, t = 0;
    if (ext_gcd(mod_reduce(a, n), n, s, t) != 1) {
        throw not_a_unit("element is not a unit modulo " + std::to_string(n));
    }
    return mod_reduce(s, n);
}

// A unit u of Z/n with a = u * gcd(a, n).
inline std::int64_t unit_part(std::int64_t a, std::int64_t n)
{
    const std::int64_t g = std::gcd(a, n);
    const std::int64_t a1 = a / g, step = n / g;
    for (std::int64_t u = a1;; u += step) {
        if (std::gcd(u, n) == 1) {
            return mod_reduce(u, n);
        }
    }
}

} // namespace detail

// U A V = diag(d_0, d_1, ...) over Z/n with U, V invertible. Each nonzero d_i divides n.
struct mod_diagonal_form {
    std::int64_t modulus = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> diag; // length min(rows, cols)
    mod_matrix v;                   // cols x cols, columns are the new coordinates
};

inline mod_diagonal_form diagonalize_mod(mod_matrix a, std::size_t cols, std::int64_t n)
{
    if (n < 2 || n >= (std::int64_t(1) << 31)) {
        throw std::invalid_argument("modulus must lie in [2, 2^31)");
    }
    const std::size_t rows = a.size();
    for (auto &row : a) {
        if (row.size() != cols) {
            throw std::invalid_argument("ragged matrix");
        }
        for (auto &x : row) {
            x = detail::mod_reduce(x, n);
        }
    }
    mod_diagonal_form out;
    out.modulus = n;
    out.rows = rows;
    out.cols = cols;
    out.v.assign(cols, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) {
        out.v[i][i] = 1;
    }
    auto &v = out.v;

    auto col_combine = [&](std::size_t c1, std::size_t c2, std::int64_t p, std::int64_t q, std::int64_t r,
                           std::int64_t s, std::size_t from_row) {
        // (col c1, col c2) <- (p c1 + q c2, r c1 + s c2)
        for (std::size_t i = from_row; i < rows; ++i) {
            const std::int64_t x = a[i][c1], y = a[i][c2];
            a[i][c1] = detail::mod_reduce(detail::mulmod(p, x, n) + detail::mulmod(q, y, n), n);
            a[i][c2] = detail::mod_reduce(detail::mulmod(r, x, n) + detail::mulmod(s, y, n), n);
        }
        for (std::size_t i = 0; i < cols; ++i) {
            const std::int64_t x = v[i][c1], y = v[i][c2];
            v[i][c1] = detail::mod_reduce(detail::mulmod(p, x, n) + detail::mulmod(q, y, n), n);
            v[i][c2] = detail::mod_reduce(detail::mulmod(r, x, n) + detail::mulmod(s, y, n), n);
        }
    };
    auto row_combine = [&](std::size_t r1, std::size_t r2, std::int64_t p, std::int64_t q, std::int64_t r,
                           std::int64_t s, std::size_t from_col) {
        for (std::size_t j = from_col; j < cols; ++j) {
            const std::int64_t x = a[r1][j], y = a[r2][j];
            a[r1][j] = detail::mod_reduce(detail::mulmod(p, x, n) + detail::mulmod(q, y, n), n);
            a[r2][j] = detail::mod_reduce(detail::mulmod(r, x, n) + detail::mulmod(s, y, n), n);
        }
    };

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        // pivot: entry with the smallest ideal gcd(a, n)
        std::size_t pi = rows, pj = cols;
        std::int64_t best = n;
        for (std::size_t i = t; i < rows && best != 1; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] != 0) {
                    const std::int64_t g = std::gcd(a[i][j], n);
                    if (g < best) {
                        best = g;
                        pi = i;
                        pj = j;
                        if (g == 1) {
                            break;
                        }
                    }
                }
            }
        }
        if (pi == rows) {
            for (std::size_t k = t; k < steps; ++k) {
                out.diag.push_back(0);
            }
            break;
        }
        std::swap(a[t], a[pi]);
        if (pj != t) {
            col_combine(t, pj, 0, 1, 1, 0, 0);
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            // scale the pivot row so the pivot becomes gcd(pivot, n)
            {
                const std::int64_t u = detail::inverse_mod_int(detail::unit_part(a[t][t], n), n);
                for (std::size_t j = t; j < cols; ++j) {
                    a[t][j] = detail::mulmod(a[t][j], u, n);
                }
            }
            for (std::size_t i = t + 1; i < rows; ++i) {
                const std::int64_t b = a[i][t];
                if (b == 0) {
                    continue;
                }
                const std::int64_t piv = a[t][t];
                if (b % piv == 0) {
                    const std::int64_t f = detail::mod_reduce(-(b / piv), n);
                    for (std::size_t j = t; j < cols; ++j) {
                        a[i][j] = detail::mod_reduce(a[i][j] + detail::mulmod(f, a[t][j], n), n);
                    }
                } else {
                    std::int64_t s = 0, q = 0;
                    const std::int64_t g = detail::ext_gcd(piv, b, s, q);
                    row_combine(t, i, detail::mod_reduce(s, n), detail::mod_reduce(q, n),
                                detail::mod_reduce(-(b / g), n), piv / g, t);
                    const std::int64_t u = detail::inverse_mod_int(detail::unit_part(a[t][t], n), n);
                    for (std::size_t j = t; j < cols; ++j) {
                        a[t][j] = detail::mulmod(a[t][j], u, n);
                    }
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                const std::int64_t b = a[t][j];
                if (b == 0) {
                    continue;
                }
                const std::int64_t piv = a[t][t];
                if (b % piv == 0) {
                    col_combine(t, j, 1, 0, detail::mod_reduce(-(b / piv), n), 1, t);
                } else {
                    std::int64_t s = 0, q = 0;
                    const std::int64_t g = detail::ext_gcd(piv, b, s, q);
                    col_combine(t, j, detail::mod_reduce(s, n), detail::mod_reduce(q, n),
                                detail::mod_reduce(-(b / g), n), piv / g, t);
                    dirty = true;
                }
            }
            if (dirty) {
                continue;
            }
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] != 0) {
                    dirty = true;
                    break;
                }
            }
        }
        out.diag.push_back(a[t][t]);
    }
    while (out.diag.size() < steps) {
        out.diag.push_back(0);
    }
    return out;
}

// |{x in (Z/n)^cols : A x = 0}|
inline integer kernel_size_mod(const mod_matrix &a, std::size_t cols, std::int64_t n)
{
    const auto d = diagonalize_mod(a, cols, n);
    integer count = 1;
    for (std::size_t i = 0; i < cols; ++i) {
        const std::int64_t di = i < d.diag.size() ? d.diag[i] : 0;
        count *= integer(std::gcd(di, n));
    }
    return count;
}

// Generators of the kernel of A over Z/n; together they span it.
inline mod_matrix kernel_generators_mod(const mod_matrix &a, std::size_t cols, std::int64_t n)
{
    const auto d = diagonalize_mod(a, cols, n);
    mod_matrix gens;
    for (std::size_t i = 0; i < cols; ++i) {
        const std::int64_t di = i < d.diag.size() ? d.diag[i] : 0;
        const std::int64_t g = std::gcd(di, n);
        if (g == 1) {
            continue;
        }
        const std::int64_t scale = n / g;
        std::vector<std::int64_t> vec(cols);
        for (std::size_t r = 0; r < cols; ++r) {
            vec[r] = detail::mulmod(d.v[r][i], scale, n);
        }
        gens.push_back(std::move(vec));
    }
    return gens;
}

// Row-style Hermite normal form over Z: the nonzero rows of the result form a basis of the
// row lattice, in echelon form with positive pivots.
struct hermite_form {
    int_matrix basis;
    std::vector<std::size_t> pivots;
};

inline hermite_form hermite_rows(int_matrix a, std::size_t cols)
{
    hermite_form out;
    std::size_t r = 0;
    const std::size_t rows = a.size();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid down column c among rows r..
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) {
                    best = i;
                }
            }
            if (best == rows) {
                break;
            }
            std::swap(a[r], a[best]);
            bool cleared = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) {
                    continue;
                }
                integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                for (std::size_t j = c; j < cols; ++j) {
                    a[i][j] -= q * a[r][j];
                }
                if (a[i][c] != 0) {
                    cleared = false;
                }
            }
            if (cleared) {
                break;
            }
        }
        if (r < rows && a[r][c] != 0) {
            if (a[r][c] < 0) {
                for (auto &x : a[r]) {
                    x = -x;
                }
            }
            out.pivots.push_back(c);
            ++r;
        }
    }
    a.resize(r);
    out.basis = std::move(a);
    return out;
}

inline std::size_t rank_over_z(const int_matrix &a, std::size_t cols)
{
    return hermite_rows(a, cols).basis.size();
}

// Integer coordinates of v in the Hermite basis; throws if v is outside the lattice.
inline std::vector<integer> hermite_coordinates(const hermite_form &h, std::vector<integer> v)
{
    std::vector<integer> x(h.basis.size());
    for (std::size_t k = 0; k < h.basis.size(); ++k) {
        const std::size_t c = h.pivots[k];
        const integer &p = h.basis[k][c];
        if (v[c] % p != 0) {
            throw std::domain_error("vector is not in the lattice");
        }
        x[k] = v[c] / p;
        for (std::size_t j = c; j < v.size(); ++j) {
            v[j] -= x[k] * h.basis[k][j];
        }
    }
    for (const auto &e : v) {
        if (e != 0) {
            throw std::domain_error("vector is not in the lattice");
        }
    }
    return x;
}

} // namespace tmfcalc

#endif
