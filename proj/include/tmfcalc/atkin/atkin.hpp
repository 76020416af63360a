#ifndef TMFCALC_ATKIN_ATKIN_HPP
#define TMFCALC_ATKIN_ATKIN_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/linalg/smith.hpp>
#include <tmfcalc/mf/modular_forms.hpp>
#include <tmfcalc/series/qseries.hpp>

namespace tmfcalc
{

inline bool is_prime(long p)
{
    if (p < 2) {
        return false;
    }
    for (long d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

inline void require_prime(long p)
{
    if (!is_prime(p)) {
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
}

// (U_p f)[n] = f[p n]; output truncation floor(trunc / p).
inline qseries u_p(const qseries &f, long p)
{
    require_prime(p);
    const std::size_t up = static_cast<std::size_t>(p);
    const std::size_t t = f.trunc() / up;
    std::vector<rational> c(t);
    for (std::size_t n = 0; n < t; ++n) {
        c[n] = f[n * up];
    }
    return qseries(f.ring(), std::move(c));
}

// (V_p f)(q) = f(q^p); output truncation p * trunc.
inline qseries v_p(const qseries &f, long p)
{
    require_prime(p);
    const std::size_t up = static_cast<std::size_t>(p);
    qseries r(f.ring(), f.trunc() * up);
    for (std::size_t n = 0; n < f.trunc(); ++n) {
        r.set(n * up, f[n]);
    }
    return r;
}

inline qseries one_minus_up(const qseries &f, long p)
{
    const qseries u = u_p(f, p);
    return f.truncated(u.trunc()) - u;
}

// T_p f = U_p f + p^(k-1) V_p f for a level-1 form of weight k
inline modular_form t_p(const modular_form &f, long p)
{
    if (f.weight < 1) {
        throw std::invalid_argument("T_p needs a positive weight");
    }
    const qseries u = u_p(f.qexp, p);
    if (u.trunc() == 0) {
        throw precision_error("T_" + std::to_string(p) + " needs q-order at least " + std::to_string(p),
                              static_cast<long>(p));
    }
    integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(f.weight - 1));
    const qseries v = v_p(f.qexp, p).truncated(u.trunc()) * rational(pk);
    return {f.weight, u + v};
}

// E_k - p^(k-1) V_p E_k, fixed by U_p
inline qseries eisenstein_p_witness(int k, long p, std::size_t trunc_q)
{
    require_prime(p);
    const qseries e = eisenstein(k, trunc_q).qexp;
    integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
    return e - v_p(e, p).truncated(trunc_q) * rational(pk);
}

struct kernel_search_result {
    long p = 0;
    int precision = 0;            // M
    std::int64_t modulus = 0;     // p^M
    std::size_t trunc_q = 0;      // q-order on which (1 - U_p) is tested
    std::vector<std::string> column_names;
    std::vector<qseries> columns;  // search-space spanning set over Q, to q-order p * trunc_q
    mod_matrix matrix;             // trunc_q rows of (1 - U_p) on the columns, mod p^M
    mod_matrix kernel_coords;      // generators of the kernel in column coordinates
    std::vector<qseries> kernel;   // the generators as q-expansions mod p^M, to q-order trunc_q
    integer kernel_size;           // |kernel| as a subgroup of (Z/p^M)^columns
};

namespace detail
{

inline std::int64_t reduce_rational_mod(const rational &x, std::int64_t n)
{
    const coeff_ring r = coeff_ring::residue(integer(static_cast<long>(n)));
    return r.normalize(x).get_num().get_si();
}

} // namespace detail

// Kernel of 1 - U_p mod p^M on span{basis of weight k} + span{V_p of the basis}, tested on the
// first trunc_q q-coefficients of the image.
inline kernel_search_result kernel_search(int k, long p, int m, std::size_t trunc_q)
{
    require_prime(p);
    if (m < 1) {
        throw std::invalid_argument("p-adic precision must be at least 1");
    }
    integer mod_big;
    mpz_ui_pow_ui(mod_big.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    if (mod_big >= integer(1L << 31)) {
        throw std::invalid_argument("p^M must be below 2^31");
    }
    kernel_search_result res;
    res.p = p;
    res.precision = m;
    res.modulus = mod_big.get_si();
    res.trunc_q = trunc_q;

    const std::size_t full = trunc_q * static_cast<std::size_t>(p);
    const auto monos = mf_basis_monomials(k);
    const auto basis = mf_basis(k, full);
    auto add_column = [&](const std::string &name, const qseries &f) {
        for (const auto &c : res.columns) {
            if (c == f) {
                return;
            }
        }
        res.column_names.push_back(name);
        res.columns.push_back(f);
    };
    for (std::size_t i = 0; i < basis.size(); ++i) {
        add_column(format_basis_monomial(monos[i]), basis[i].qexp);
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        add_column("V" + std::to_string(p) + "(" + format_basis_monomial(monos[i]) + ")",
                   v_p(basis[i].qexp, p).truncated(full));
    }
    const std::size_t cols = res.columns.size();
    if (trunc_q < cols) {
        throw precision_error("kernel search over " + std::to_string(cols) + " columns needs q-order at least "
                                  + std::to_string(cols) + ", got " + std::to_string(trunc_q),
                              static_cast<long>(cols));
    }
    res.matrix.assign(trunc_q, std::vector<std::int64_t>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        const qseries img = one_minus_up(res.columns[j], p);
        for (std::size_t n = 0; n < trunc_q; ++n) {
            res.matrix[n][j] = detail::reduce_rational_mod(img[n], res.modulus);
        }
    }
    res.kernel_coords = kernel_generators_mod(res.matrix, cols, res.modulus);
    res.kernel_size = kernel_size_mod(res.matrix, cols, res.modulus);
    const coeff_ring zn = coeff_ring::residue(integer(static_cast<long>(res.modulus)));
    for (const auto &v : res.kernel_coords) {
        qseries f(zn, trunc_q);
        for (std::size_t j = 0; j < cols; ++j) {
            if (v[j] != 0) {
                f += res.columns[j].truncated(trunc_q).change_ring(zn) * rational(v[j]);
            }
        }
        res.kernel.push_back(std::move(f));
    }
    return res;
}

// Whether g (a q-expansion over Q or Z/p^M) lies in the span of the kernel generators mod p^M,
// comparing the first trunc_q coefficients.
inline bool kernel_contains(const kernel_search_result &res, const qseries &g)
{
    const std::int64_t n = res.modulus;
    const std::size_t r = res.kernel.size();
    // columns: generators, then g; g is in the span iff some kernel vector has a unit last entry
    mod_matrix a(res.trunc_q, std::vector<std::int64_t>(r + 1, 0));
    for (std::size_t i = 0; i < res.trunc_q; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            a[i][j] = detail::reduce_rational_mod(res.kernel[j][i], n);
        }
        a[i][r] = detail::reduce_rational_mod(g.coeff(i), n);
    }
    const auto gens = kernel_generators_mod(a, r + 1, n);
    std::int64_t ideal = n;
    for (const auto &v : gens) {
        ideal = std::gcd(ideal, v[r]);
    }
    return ideal == 1;
}

} // namespace tmfcalc

#endif
