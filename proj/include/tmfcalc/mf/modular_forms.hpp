#ifndef TMFCALC_MF_MODULAR_FORMS_HPP
#define TMFCALC_MF_MODULAR_FORMS_HPP

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/series/qseries.hpp>

namespace tmfcalc
{

struct modular_form {
    int weight = 0;
    qseries qexp;
};

// B_n with B_1 = -1/2, from sum_{k<=n} binom(n+1, k) B_k = 0.
inline rational bernoulli(unsigned n)
{
    static std::mutex mu;
    static std::vector<rational> table{rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= n) {
        const unsigned m = static_cast<unsigned>(table.size());
        rational acc = 0;
        integer binom = 1; // binom(m+1, k)
        for (unsigned k = 0; k < m; ++k) {
            acc += rational(binom) * table[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        table.push_back(-acc / rational(integer(m + 1)));
    }
    return table[n];
}

// sum of d^k over divisors d of n
inline integer divisor_sigma(unsigned k, unsigned long n)
{
    integer s = 0;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0) {
            continue;
        }
        integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, k);
        s += t;
        const unsigned long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), e, k);
            s += t;
        }
    }
    return s;
}

// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n
inline modular_form eisenstein(int k, std::size_t trunc_q)
{
    if (k < 4 || k % 2 != 0) {
        throw std::invalid_argument("Eisenstein series need an even weight k >= 4, got " + std::to_string(k));
    }
    const rational factor = -rational(2 * k) / bernoulli(static_cast<unsigned>(k));
    std::vector<rational> c(trunc_q);
    if (trunc_q > 0) {
        c[0] = 1;
    }
    for (std::size_t n = 1; n < trunc_q; ++n) {
        c[n] = factor * rational(divisor_sigma(static_cast<unsigned>(k - 1), n));
    }
    return {k, qseries(coeff_ring::Q(), std::move(c))};
}

inline modular_form c4(std::size_t trunc_q)
{
    return eisenstein(4, trunc_q);
}
inline modular_form c6(std::size_t trunc_q)
{
    return eisenstein(6, trunc_q);
}

// q prod_{n>=1} (1 - q^n)^24
inline modular_form delta(std::size_t trunc_q)
{
    std::vector<integer> c(trunc_q, 0);
    if (trunc_q > 1) {
        c[1] = 1;
    }
    for (std::size_t n = 1; n < trunc_q; ++n) {
        for (int rep = 0; rep < 24; ++rep) {
            for (std::size_t i = trunc_q - 1; i >= n; --i) {
                c[i] -= c[i - n];
            }
        }
    }
    std::vector<rational> r(c.begin(), c.end());
    return {12, qseries(coeff_ring::Q(), std::move(r))};
}

struct basis_monomial {
    int a = 0, b = 0, c = 0; // c4^a c6^b Delta^c
};

inline std::string format_basis_monomial(const basis_monomial &m)
{
    std::string s;
    auto part = [&](const char *name, int e) {
        if (e == 0) {
            return;
        }
        if (!s.empty()) {
            s += "*";
        }
        s += name;
        if (e != 1) {
            s += "^" + std::to_string(e);
        }
    };
    part("c4", m.a);
    part("c6", m.b);
    part("Delta", m.c);
    return s.empty() ? "1" : s;
}

// c4^a c6^b Delta^c with 4a + 6b + 12c = weight and b in {0, 1}, ordered by c ascending.
inline std::vector<basis_monomial> mf_basis_monomials(int weight)
{
    if (weight < 0 || weight % 2 != 0) {
        throw std::invalid_argument("level-1 forms need an even non-negative weight, got " + std::to_string(weight));
    }
    std::vector<basis_monomial> out;
    for (int c = 0; 12 * c <= weight; ++c) {
        const int rest = weight - 12 * c;
        for (int b = 0; b <= 1; ++b) {
            const int r = rest - 6 * b;
            if (r >= 0 && r % 4 == 0) {
                out.push_back({r / 4, b, c});
            }
        }
    }
    return out;
}

inline std::vector<modular_form> mf_basis(int weight, std::size_t trunc_q)
{
    static std::mutex mu;
    static std::map<std::pair<int, std::size_t>, std::vector<modular_form>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({weight, trunc_q});
        if (it != cache.end()) {
            return it->second;
        }
    }
    const auto monos = mf_basis_monomials(weight);
    const qseries e4 = c4(trunc_q).qexp, e6 = c6(trunc_q).qexp, d = delta(trunc_q).qexp;
    std::vector<modular_form> out;
    for (const auto &m : monos) {
        qseries f = pow(e4, static_cast<unsigned>(m.a)) * pow(e6, static_cast<unsigned>(m.b))
                    * pow(d, static_cast<unsigned>(m.c));
        out.push_back({weight, std::move(f)});
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(weight, trunc_q), out);
    return out;
}

struct decomposition {
    bool ok = false;
    std::vector<rational> coords;           // in mf_basis order
    std::optional<std::size_t> inconsistent; // first q-degree where the residual is nonzero
};

// Coordinates of f in mf_basis(weight). The basis is unitriangular (element i starts at q^i), so
// coordinates come from successive elimination; every remaining coefficient must then vanish.
inline decomposition decompose(const qseries &f, int weight)
{
    const auto monos = mf_basis_monomials(weight);
    if (f.trunc() <= monos.size()) {
        throw precision_error("decomposition in weight " + std::to_string(weight) + " needs q-order at least "
                                  + std::to_string(monos.size() + 1) + ", got " + std::to_string(f.trunc()),
                              static_cast<long>(monos.size() + 1));
    }
    const auto basis = mf_basis(weight, f.trunc());
    qseries residual = f.change_ring(coeff_ring::Q());
    decomposition d;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const rational c = residual[i] / basis[i].qexp[i];
        d.coords.push_back(c);
        residual -= basis[i].qexp * c;
    }
    for (std::size_t n = 0; n < residual.trunc(); ++n) {
        if (residual[n] != 0) {
            d.inconsistent = n;
            return d;
        }
    }
    d.ok = true;
    return d;
}

struct membership {
    bool member = false;
    rational alpha, beta; // f = alpha c4^3 + beta Delta
};

// Membership in the lattice generated by c4^3 and 24 Delta.
inline membership mf12_membership(const qseries &f)
{
    const auto d = decompose(f, 12);
    if (!d.ok) {
        throw std::domain_error("not a weight-12 modular form: residual nonzero at q^" + std::to_string(*d.inconsistent));
    }
    membership m;
    m.alpha = d.coords[0];
    m.beta = d.coords[1];
    const rational b24 = m.beta / 24;
    m.member = m.alpha.get_den() == 1 && b24.get_den() == 1;
    return m;
}

} // namespace tmfcalc

#endif
