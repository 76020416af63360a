#ifndef TMFCALC_SERIES_LAURENT_HPP
#define TMFCALC_SERIES_LAURENT_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tmfcalc/core/ring.hpp>

namespace tmfcalc
{

// Integer Laurent polynomial in a fixed number of invertible variables.
class laurent_poly
{
public:
    using exponent_type = std::vector<int>;
    using term_map = std::map<exponent_type, integer>;

    laurent_poly() = default;
    explicit laurent_poly(std::size_t nvars) : m_nvars(nvars) {}

    static laurent_poly constant(std::size_t nvars, const integer &c)
    {
        laurent_poly p(nvars);
        p.add_term(exponent_type(nvars, 0), c);
        return p;
    }
    static laurent_poly monomial(const exponent_type &e, const integer &c)
    {
        laurent_poly p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }

    integer coeff(const exponent_type &e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? integer(0) : it->second;
    }

    void add_term(const exponent_type &e, const integer &c)
    {
        if (e.size() != m_nvars) {
            throw std::invalid_argument("Laurent exponent has the wrong number of variables");
        }
        if (c == 0) {
            return;
        }
        auto [it, fresh] = m_terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    laurent_poly &operator+=(const laurent_poly &o)
    {
        check(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }
    laurent_poly &operator-=(const laurent_poly &o)
    {
        check(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, -c);
        }
        return *this;
    }
    friend laurent_poly operator+(laurent_poly a, const laurent_poly &b)
    {
        a += b;
        return a;
    }
    friend laurent_poly operator-(laurent_poly a, const laurent_poly &b)
    {
        a -= b;
        return a;
    }
    friend laurent_poly operator*(const laurent_poly &a, const laurent_poly &b)
    {
        a.check(b);
        laurent_poly r(a.m_nvars);
        exponent_type e(a.m_nvars);
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    laurent_poly operator-() const
    {
        laurent_poly r(*this);
        for (auto &[e, c] : r.m_terms) {
            c = -c;
        }
        return r;
    }

    // Substitutes each variable by a monomial: variable i -> prod_j u_j^{images[i][j]}
    // in a target ring with target_nvars variables.
    laurent_poly monomial_substitute(const std::vector<exponent_type> &images, std::size_t target_nvars) const
    {
        if (images.size() != m_nvars) {
            throw std::invalid_argument("monomial substitution needs one image per variable");
        }
        laurent_poly r(target_nvars);
        exponent_type e2(target_nvars);
        for (const auto &[e, c] : m_terms) {
            std::fill(e2.begin(), e2.end(), 0);
            for (std::size_t i = 0; i < m_nvars; ++i) {
                for (std::size_t j = 0; j < target_nvars; ++j) {
                    e2[j] += e[i] * images[i][j];
                }
            }
            r.add_term(e2, c);
        }
        return r;
    }

    friend bool operator==(const laurent_poly &a, const laurent_poly &b)
    {
        return a.m_nvars == b.m_nvars && a.m_terms == b.m_terms;
    }
    friend bool operator!=(const laurent_poly &a, const laurent_poly &b)
    {
        return !(a == b);
    }

    std::string to_string(const std::vector<std::string> &names) const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string s;
        // descending exponent order reads more naturally for one variable
        for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
            const auto &[e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += names.at(i);
                if (e[i] != 1) {
                    mono += "^" + std::to_string(e[i]);
                }
            }
            integer a = abs(c);
            std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
            if (s.empty()) {
                s = (c < 0 ? "-" : "") + term;
            } else {
                s += (c < 0 ? " - " : " + ") + term;
            }
        }
        return s;
    }

private:
    void check(const laurent_poly &o) const
    {
        if (o.m_nvars != m_nvars) {
            throw ring_mismatch("Laurent polynomials in different numbers of variables");
        }
    }

    std::size_t m_nvars = 0;
    term_map m_terms;
};

// Truncated q-series whose coefficients are Laurent polynomials:
// layers[n] is the coefficient of q^n, n < layers.size().
class laurent_qseries
{
public:
    laurent_qseries() = default;
    laurent_qseries(std::size_t nvars, std::size_t trunc) : m_nvars(nvars), m_layers(trunc, laurent_poly(nvars)) {}

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    std::size_t trunc() const noexcept
    {
        return m_layers.size();
    }
    const laurent_poly &layer(std::size_t n) const
    {
        return m_layers.at(n);
    }
    laurent_poly &layer(std::size_t n)
    {
        return m_layers.at(n);
    }
    const std::vector<laurent_poly> &layers() const noexcept
    {
        return m_layers;
    }

    friend laurent_qseries operator*(const laurent_qseries &a, const laurent_qseries &b)
    {
        if (a.m_nvars != b.m_nvars) {
            throw ring_mismatch("Laurent q-series in different numbers of variables");
        }
        const std::size_t t = std::min(a.trunc(), b.trunc());
        laurent_qseries r(a.m_nvars, t);
        for (std::size_t i = 0; i < t; ++i) {
            if (a.m_layers[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; i + j < t; ++j) {
                if (!b.m_layers[j].is_zero()) {
                    r.m_layers[i + j] += a.m_layers[i] * b.m_layers[j];
                }
            }
        }
        return r;
    }

    laurent_qseries monomial_substitute(const std::vector<laurent_poly::exponent_type> &images,
                                        std::size_t target_nvars) const
    {
        laurent_qseries r(target_nvars, trunc());
        for (std::size_t n = 0; n < trunc(); ++n) {
            r.m_layers[n] = m_layers[n].monomial_substitute(images, target_nvars);
        }
        return r;
    }

    friend bool operator==(const laurent_qseries &a, const laurent_qseries &b)
    {
        return a.m_nvars == b.m_nvars && a.m_layers == b.m_layers;
    }

private:
    std::size_t m_nvars = 0;
    std::vector<laurent_poly> m_layers;
};

} // namespace tmfcalc

#endif
