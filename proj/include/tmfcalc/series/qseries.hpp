#ifndef TMFCALC_SERIES_QSERIES_HPP
#define TMFCALC_SERIES_QSERIES_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tmfcalc/core/parallel.hpp>
#include <tmfcalc/core/ring.hpp>

namespace tmfcalc
{

// Dense truncated power series sum_{n < trunc} c_n q^n over a coeff_ring.
class qseries
{
public:
    qseries() = default;
    qseries(coeff_ring r, std::size_t trunc) : m_ring(std::move(r)), m_coeffs(trunc) {}
    qseries(coeff_ring r, std::vector<rational> coeffs) : m_ring(std::move(r)), m_coeffs(std::move(coeffs))
    {
        for (auto &c : m_coeffs) {
            c = m_ring.normalize(c);
        }
    }

    static qseries constant(const coeff_ring &r, std::size_t trunc, const rational &c)
    {
        qseries s(r, trunc);
        if (trunc > 0) {
            s.m_coeffs[0] = r.normalize(c);
        }
        return s;
    }
    static qseries monomial(const coeff_ring &r, std::size_t trunc, std::size_t n, const rational &c)
    {
        qseries s(r, trunc);
        if (n < trunc) {
            s.m_coeffs[n] = r.normalize(c);
        }
        return s;
    }

    const coeff_ring &ring() const noexcept
    {
        return m_ring;
    }
    std::size_t trunc() const noexcept
    {
        return m_coeffs.size();
    }
    const std::vector<rational> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    const rational &operator[](std::size_t n) const
    {
        return m_coeffs[n];
    }
    const rational &coeff(std::size_t n) const
    {
        if (n >= m_coeffs.size()) {
            throw precision_error("coefficient q^" + std::to_string(n) + " is beyond the truncation q^"
                                      + std::to_string(m_coeffs.size()),
                                  static_cast<long>(n + 1));
        }
        return m_coeffs[n];
    }
    void set(std::size_t n, const rational &c)
    {
        if (n >= m_coeffs.size()) {
            throw std::out_of_range("qseries::set beyond truncation");
        }
        m_coeffs[n] = m_ring.normalize(c);
    }

    bool is_zero() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const rational &c) { return c == 0; });
    }

    // Index of the first nonzero coefficient, or trunc() if none is stored.
    std::size_t order() const
    {
        std::size_t i = 0;
        while (i < m_coeffs.size() && m_coeffs[i] == 0) {
            ++i;
        }
        return i;
    }

    qseries truncated(std::size_t n) const
    {
        if (n > trunc()) {
            throw precision_error("cannot extend a series truncated at q^" + std::to_string(trunc()),
                                  static_cast<long>(n));
        }
        qseries r;
        r.m_ring = m_ring;
        r.m_coeffs.assign(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(n));
        return r;
    }

    // Image under the canonical map into another ring (e.g. Z -> Z/N).
    qseries change_ring(const coeff_ring &r) const
    {
        return qseries(r, m_coeffs);
    }

    qseries operator-() const
    {
        qseries r(*this);
        for (auto &c : r.m_coeffs) {
            c = -c;
            m_ring.reduce_in_place(c);
        }
        return r;
    }

    qseries &operator+=(const qseries &o)
    {
        check_ring(o);
        resize_to_min(o);
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            m_coeffs[i] += o.m_coeffs[i];
            m_ring.reduce_in_place(m_coeffs[i]);
        }
        return *this;
    }
    qseries &operator-=(const qseries &o)
    {
        check_ring(o);
        resize_to_min(o);
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            m_coeffs[i] -= o.m_coeffs[i];
            m_ring.reduce_in_place(m_coeffs[i]);
        }
        return *this;
    }
    qseries &operator*=(const qseries &o)
    {
        *this = *this * o;
        return *this;
    }
    qseries &operator*=(const rational &c)
    {
        const rational k = m_ring.normalize(c);
        for (auto &x : m_coeffs) {
            x *= k;
            m_ring.reduce_in_place(x);
        }
        return *this;
    }

    friend qseries operator+(qseries a, const qseries &b)
    {
        a += b;
        return a;
    }
    friend qseries operator-(qseries a, const qseries &b)
    {
        a -= b;
        return a;
    }
    friend qseries operator*(qseries a, const rational &c)
    {
        a *= c;
        return a;
    }
    friend qseries operator*(const rational &c, qseries a)
    {
        a *= c;
        return a;
    }

    friend qseries operator*(const qseries &a, const qseries &b)
    {
        a.check_ring(b);
        const std::size_t n = std::min(a.trunc(), b.trunc());
        qseries r(a.m_ring, n);
        const bool residue = a.m_ring.get_kind() == coeff_ring::kind::residue;
        // first nonzero index of each factor; skips leading zeros of cusp forms
        const std::size_t la = a.order(), lb = b.order();
        parallel_chunks(n, 256, [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                if (k < la + lb) {
                    continue;
                }
                rational acc;
                for (std::size_t i = la; i + lb <= k; ++i) {
                    const rational &x = a.m_coeffs[i];
                    if (x == 0) {
                        continue;
                    }
                    const rational &y = b.m_coeffs[k - i];
                    if (y == 0) {
                        continue;
                    }
                    if (residue || (x.get_den() == 1 && y.get_den() == 1 && acc.get_den() == 1)) {
                        mpz_addmul(acc.get_num_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
                    } else {
                        acc += x * y;
                    }
                }
                a.m_ring.reduce_in_place(acc);
                r.m_coeffs[k] = std::move(acc);
            }
        });
        return r;
    }

    // Multiplicative inverse; the constant term must be a unit of the ring.
    qseries inverse() const
    {
        const std::size_t n = trunc();
        qseries r(m_ring, n);
        if (n == 0) {
            return r;
        }
        if (!m_ring.is_unit(m_coeffs[0])) {
            throw not_a_unit("constant term " + m_coeffs[0].get_str() + " of the series is not a unit of "
                             + m_ring.to_string());
        }
        const rational c0inv = m_ring.inverse(m_coeffs[0]);
        r.m_coeffs[0] = c0inv;
        for (std::size_t k = 1; k < n; ++k) {
            rational acc;
            for (std::size_t i = 1; i <= k; ++i) {
                if (m_coeffs[i] != 0 && r.m_coeffs[k - i] != 0) {
                    acc += m_coeffs[i] * r.m_coeffs[k - i];
                }
            }
            acc = -acc * c0inv;
            r.m_coeffs[k] = m_ring.normalize(acc);
        }
        return r;
    }

    friend bool operator==(const qseries &a, const qseries &b)
    {
        return a.m_ring == b.m_ring && a.m_coeffs == b.m_coeffs;
    }
    friend bool operator!=(const qseries &a, const qseries &b)
    {
        return !(a == b);
    }

    void check_ring(const qseries &o) const
    {
        if (m_ring != o.m_ring) {
            throw ring_mismatch("q-series over different rings: " + m_ring.to_string() + " vs "
                                + o.m_ring.to_string());
        }
    }

private:
    void resize_to_min(const qseries &o)
    {
        if (o.trunc() < trunc()) {
            m_coeffs.resize(o.trunc());
        }
    }

    coeff_ring m_ring = coeff_ring::Q();
    std::vector<rational> m_coeffs;
};

// True when a and b agree on every coefficient both of them store.
inline bool agree_to_min_trunc(const qseries &a, const qseries &b)
{
    a.check_ring(b);
    const std::size_t n = std::min(a.trunc(), b.trunc());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) {
            return false;
        }
    }
    return true;
}

inline qseries pow(const qseries &a, unsigned e)
{
    qseries r = qseries::constant(a.ring(), a.trunc(), 1);
    qseries base = a;
    while (e != 0) {
        if (e & 1u) {
            r *= base;
        }
        e >>= 1;
        if (e != 0) {
            base *= base;
        }
    }
    return r;
}

// exp of a series with zero constant term; exact-rational ring only.
inline qseries exp(const qseries &a)
{
    if (!a.ring().is_field_of_fractions()) {
        throw std::domain_error("exp requires the exact-rational ring, got " + a.ring().to_string());
    }
    const std::size_t n = a.trunc();
    if (n > 0 && a[0] != 0) {
        throw std::domain_error("exp requires a series with zero constant term");
    }
    // (exp a)' = a' exp a, solved coefficient by coefficient
    std::vector<rational> r(n);
    if (n > 0) {
        r[0] = 1;
    }
    for (std::size_t k = 1; k < n; ++k) {
        rational acc;
        for (std::size_t i = 1; i <= k; ++i) {
            if (a[i] != 0) {
                acc += rational(static_cast<long>(i)) * a[i] * r[k - i];
            }
        }
        r[k] = acc / static_cast<long>(k);
    }
    return qseries(a.ring(), std::move(r));
}

// log of a series with constant term 1; exact-rational ring only.
inline qseries log(const qseries &a)
{
    if (!a.ring().is_field_of_fractions()) {
        throw std::domain_error("log requires the exact-rational ring, got " + a.ring().to_string());
    }
    const std::size_t n = a.trunc();
    if (n > 0 && a[0] != 1) {
        throw std::domain_error("log requires a series with constant term 1");
    }
    // a * (log a)' = a'
    std::vector<rational> d(n); // d[k] = k * (log a)_k
    std::vector<rational> r(n);
    for (std::size_t k = 1; k < n; ++k) {
        rational acc = rational(static_cast<long>(k)) * a[k];
        for (std::size_t i = 1; i < k; ++i) {
            if (a[k - i] != 0) {
                acc -= a[k - i] * d[i];
            }
        }
        d[k] = acc;
        r[k] = acc / static_cast<long>(k);
    }
    return qseries(a.ring(), std::move(r));
}

// Coefficient algebra whose values are q-series of a fixed ring and truncation.
struct qseries_algebra {
    using value_type = qseries;

    coeff_ring ring = coeff_ring::Q();
    std::size_t trunc = 0;

    qseries_algebra() = default;
    qseries_algebra(coeff_ring r, std::size_t t) : ring(std::move(r)), trunc(t) {}

    value_type zero() const
    {
        return qseries(ring, trunc);
    }
    value_type one() const
    {
        return qseries::constant(ring, trunc, 1);
    }
    value_type from_rational(const rational &c) const
    {
        return qseries::constant(ring, trunc, c);
    }
    value_type normalize(const value_type &a) const
    {
        if (a.ring() != ring) {
            throw ring_mismatch("coefficient over " + a.ring().to_string() + " in a series over " + ring.to_string());
        }
        return a.truncated(trunc);
    }
    void add_to(value_type &acc, const value_type &b) const
    {
        acc += b;
    }
    void add_product(value_type &acc, const value_type &a, const value_type &b) const
    {
        acc += a * b;
    }
    value_type add(const value_type &a, const value_type &b) const
    {
        return a + b;
    }
    value_type sub(const value_type &a, const value_type &b) const
    {
        return a - b;
    }
    value_type mul(const value_type &a, const value_type &b) const
    {
        return a * b;
    }
    value_type neg(const value_type &a) const
    {
        return -a;
    }
    value_type scale(const value_type &a, const rational &c) const
    {
        return a * c;
    }
    bool is_zero(const value_type &a) const
    {
        return a.is_zero();
    }
    bool is_unit(const value_type &a) const
    {
        return a.trunc() == 0 || ring.is_unit(a[0]);
    }
    value_type inverse(const value_type &a) const
    {
        return a.inverse();
    }
    bool divides_by_integers() const
    {
        return ring.is_field_of_fractions();
    }
    bool equal(const value_type &a, const value_type &b) const
    {
        return a == b;
    }
    std::string format(const value_type &a) const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < a.trunc(); ++i) {
            if (i != 0) {
                s += ",";
            }
            s += a[i].get_str();
        }
        return s + "]";
    }
    std::string describe() const
    {
        return ring.to_string() + "[[q]]/q^" + std::to_string(trunc);
    }
    friend bool operator==(const qseries_algebra &a, const qseries_algebra &b)
    {
        return a.ring == b.ring && a.trunc == b.trunc;
    }
    friend bool operator!=(const qseries_algebra &a, const qseries_algebra &b)
    {
        return !(a == b);
    }
};

} // namespace tmfcalc

#endif
