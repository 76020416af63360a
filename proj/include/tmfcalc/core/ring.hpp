#ifndef TMFCALC_CORE_RING_HPP
#define TMFCALC_CORE_RING_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace tmfcalc
{

using integer = mpz_class;
using rational = mpq_class;

// Operands live over different coefficient rings (or variable sets).
class ring_mismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// An element that must be invertible is not.
class not_a_unit : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Requested truncation cannot decide the question; carries the minimum that would.
class precision_error : public std::runtime_error
{
public:
    precision_error(const std::string &what, long required)
        : std::runtime_error(what), m_required(required)
    {
    }
    long required() const noexcept
    {
        return m_required;
    }

private:
    long m_required;
};

// Malformed textual input; line is 1-based, 0 when unknown.
class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string &what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), m_line(line)
    {
    }
    int line() const noexcept
    {
        return m_line;
    }

private:
    int m_line;
};

namespace detail
{

inline integer mod_floor(const integer &a, const integer &n)
{
    integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool inverse_mod(const integer &a, const integer &n, integer &out)
{
    return mpz_invert(out.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) != 0;
}

inline std::string to_string(const rational &q)
{
    return q.get_str();
}

inline rational parse_rational(const std::string &s)
{
    if (s.empty()) {
        throw parse_error("empty number");
    }
    rational r;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) {
        throw parse_error("malformed number '" + s + "'");
    }
    bool slash = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (slash || i == start || i + 1 == s.size()) {
                throw parse_error("malformed number '" + s + "'");
            }
            slash = true;
        } else if (s[i] < '0' || s[i] > '9') {
            throw parse_error("malformed number '" + s + "'");
        }
    }
    std::string body = s[0] == '+' ? s.substr(1) : s;
    if (r.set_str(body, 10) != 0 || r.get_den() == 0) {
        throw parse_error("malformed number '" + s + "'");
    }
    r.canonicalize();
    return r;
}

} // namespace detail

// The exact coefficient ring of a series: Q, Z or Z/N.
class coeff_ring
{
public:
    enum class kind { rational, integer, residue };

    coeff_ring() = default;

    static coeff_ring Q()
    {
        return coeff_ring(kind::rational, 0);
    }
    static coeff_ring Z()
    {
        return coeff_ring(kind::integer, 0);
    }
    static coeff_ring residue(const integer &n)
    {
        if (n < 2) {
            throw std::invalid_argument("residue ring modulus must be at least 2, got " + n.get_str());
        }
        return coeff_ring(kind::residue, n);
    }

    kind get_kind() const noexcept
    {
        return m_kind;
    }
    const integer &modulus() const noexcept
    {
        return m_modulus;
    }
    bool is_field_of_fractions() const noexcept
    {
        return m_kind == kind::rational;
    }

    // Brings a rational into canonical form for this ring. Fails if the value
    // does not live in the ring (non-integral for Z, non-invertible denominator for Z/N).
    rational normalize(const rational &x_in) const
    {
        rational x = x_in;
        x.canonicalize();
        switch (m_kind) {
            case kind::rational:
                return x;
            case kind::integer:
                if (x.get_den() != 1) {
                    throw std::domain_error("value " + x.get_str() + " is not an integer");
                }
                return x;
            case kind::residue: {
                integer num = detail::mod_floor(x.get_num(), m_modulus);
                if (x.get_den() != 1) {
                    integer inv;
                    if (!detail::inverse_mod(x.get_den(), m_modulus, inv)) {
                        throw std::domain_error("denominator of " + x.get_str() + " is not invertible mod "
                                                + m_modulus.get_str());
                    }
                    num = detail::mod_floor(num * inv, m_modulus);
                }
                return rational(num);
            }
        }
        return x;
    }

    // Fast path for values already in canonical form.
    void reduce_in_place(rational &x) const
    {
        if (m_kind == kind::residue) {
            mpz_fdiv_r(x.get_num_mpz_t(), x.get_num_mpz_t(), m_modulus.get_mpz_t());
        }
    }

    bool is_unit(const rational &x) const
    {
        switch (m_kind) {
            case kind::rational:
                return x != 0;
            case kind::integer:
                return x == 1 || x == -1;
            case kind::residue: {
                integer g;
                mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), m_modulus.get_mpz_t());
                return g == 1;
            }
        }
        return false;
    }

    rational inverse(const rational &x) const
    {
        if (!is_unit(x)) {
            throw not_a_unit(x.get_str() + " is not a unit of " + to_string());
        }
        switch (m_kind) {
            case kind::rational:
                return 1 / x;
            case kind::integer:
                return x;
            case kind::residue: {
                integer inv;
                detail::inverse_mod(x.get_num(), m_modulus, inv);
                return rational(inv);
            }
        }
        return x;
    }

    std::string to_string() const
    {
        switch (m_kind) {
            case kind::rational:
                return "Q";
            case kind::integer:
                return "Z";
            case kind::residue:
                return "Z/" + m_modulus.get_str();
        }
        return "?";
    }

    static coeff_ring parse(const std::string &s)
    {
        if (s == "Q") {
            return Q();
        }
        if (s == "Z") {
            return Z();
        }
        if (s.size() > 2 && s.compare(0, 2, "Z/") == 0) {
            integer n;
            const std::string digits = s.substr(2);
            for (char c : digits) {
                if (c < '0' || c > '9') {
                    throw parse_error("malformed ring '" + s + "'");
                }
            }
            n.set_str(digits, 10);
            try {
                return residue(n);
            } catch (const std::invalid_argument &e) {
                throw parse_error(e.what());
            }
        }
        throw parse_error("unknown ring '" + s + "' (expected Q, Z or Z/N)");
    }

    friend bool operator==(const coeff_ring &a, const coeff_ring &b)
    {
        return a.m_kind == b.m_kind && (a.m_kind != kind::residue || a.m_modulus == b.m_modulus);
    }
    friend bool operator!=(const coeff_ring &a, const coeff_ring &b)
    {
        return !(a == b);
    }

private:
    coeff_ring(kind k, integer n) : m_kind(k), m_modulus(std::move(n)) {}

    kind m_kind = kind::rational;
    integer m_modulus = 0;
};

// Coefficient algebra for multivariate series whose coefficients are plain ring elements.
// Every coefficient domain used by multi_series exposes this same interface.
struct scalar_algebra {
    using value_type = rational;

    coeff_ring ring = coeff_ring::Q();

    scalar_algebra() = default;
    explicit scalar_algebra(coeff_ring r) : ring(std::move(r)) {}

    value_type zero() const
    {
        return 0;
    }
    value_type one() const
    {
        return ring.normalize(1);
    }
    value_type from_rational(const rational &q) const
    {
        return ring.normalize(q);
    }
    value_type normalize(const value_type &a) const
    {
        return ring.normalize(a);
    }
    void add_to(value_type &acc, const value_type &b) const
    {
        acc += b;
        ring.reduce_in_place(acc);
    }
    void add_product(value_type &acc, const value_type &a, const value_type &b) const
    {
        if (ring.get_kind() == coeff_ring::kind::rational) {
            acc += a * b;
        } else {
            mpz_addmul(acc.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
            ring.reduce_in_place(acc);
        }
    }
    value_type add(const value_type &a, const value_type &b) const
    {
        value_type r = a + b;
        ring.reduce_in_place(r);
        return r;
    }
    value_type sub(const value_type &a, const value_type &b) const
    {
        value_type r = a - b;
        ring.reduce_in_place(r);
        return r;
    }
    value_type mul(const value_type &a, const value_type &b) const
    {
        value_type r = a * b;
        ring.reduce_in_place(r);
        return r;
    }
    value_type neg(const value_type &a) const
    {
        value_type r = -a;
        ring.reduce_in_place(r);
        return r;
    }
    value_type scale(const value_type &a, const rational &c) const
    {
        return mul(a, ring.normalize(c));
    }
    bool is_zero(const value_type &a) const
    {
        return a == 0;
    }
    bool is_unit(const value_type &a) const
    {
        return ring.is_unit(a);
    }
    value_type inverse(const value_type &a) const
    {
        return ring.inverse(a);
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
        return a.get_str();
    }
    std::string describe() const
    {
        return ring.to_string();
    }
    friend bool operator==(const scalar_algebra &a, const scalar_algebra &b)
    {
        return a.ring == b.ring;
    }
    friend bool operator!=(const scalar_algebra &a, const scalar_algebra &b)
    {
        return !(a == b);
    }
};

} // namespace tmfcalc

#endif
