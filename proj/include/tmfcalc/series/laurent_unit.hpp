#ifndef TMFCALC_SERIES_LAURENT_UNIT_HPP
#define TMFCALC_SERIES_LAURENT_UNIT_HPP

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/series/multi_series.hpp>

namespace tmfcalc
{

// Integer linear form sum c_i v_i; names the divisor {sum c_i v_i = 0}.
using linear_form = std::vector<int>;

inline std::string format_linear_form(const linear_form &f, const std::vector<std::string> &vars)
{
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) {
            continue;
        }
        const int a = std::abs(f[i]);
        std::string term = a == 1 ? vars.at(i) : std::to_string(a) + vars.at(i);
        if (s.empty()) {
            s = (f[i] < 0 ? "-" : "") + term;
        } else {
            s += (f[i] < 0 ? "-" : "+") + term;
        }
    }
    return s.empty() ? "0" : s;
}

// (prod_i form_i^{val_i}) * unit, with forms normalized to a positive leading coefficient
// and the unit's constant term invertible.
template <typename Alg>
class laurent_unit
{
public:
    using series = multi_series<Alg>;
    using divisor_map = std::map<linear_form, int>;

    laurent_unit() = default;
    explicit laurent_unit(series unit) : m_unit(std::move(unit))
    {
        check_unit();
    }
    laurent_unit(const std::vector<linear_form> &forms, const std::vector<int> &vals, series unit)
        : m_unit(std::move(unit))
    {
        if (forms.size() != vals.size()) {
            throw std::invalid_argument("one valuation per divisor is required");
        }
        for (std::size_t i = 0; i < forms.size(); ++i) {
            add_divisor(forms[i], vals[i]);
        }
        check_unit();
    }

    const series &unit() const noexcept
    {
        return m_unit;
    }
    const divisor_map &divisors() const noexcept
    {
        return m_divs;
    }
    const std::vector<std::string> &vars() const noexcept
    {
        return m_unit.vars();
    }
    int valuation(const linear_form &f) const
    {
        linear_form g = f;
        normalize(g);
        auto it = m_divs.find(g);
        return it == m_divs.end() ? 0 : it->second;
    }

    friend laurent_unit operator*(const laurent_unit &a, const laurent_unit &b)
    {
        laurent_unit r;
        r.m_unit = a.m_unit * b.m_unit;
        r.m_divs = a.m_divs;
        for (const auto &[f, v] : b.m_divs) {
            r.add_normalized(f, v);
        }
        return r;
    }

    laurent_unit inverse() const
    {
        laurent_unit r;
        r.m_unit = invert(m_unit);
        for (const auto &[f, v] : m_divs) {
            r.m_divs[f] = -v;
        }
        return r;
    }

    // Linear change of variables: variable i becomes sum_j images[i][j] * target_j.
    laurent_unit substitute_linear(const std::vector<std::vector<int>> &images,
                                   const std::vector<std::string> &target) const
    {
        if (images.size() != vars().size()) {
            throw std::invalid_argument("linear substitution needs one image per variable");
        }
        const Alg &alg = m_unit.algebra();
        std::map<std::string, series> assign;
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (images[i].size() != target.size()) {
                throw std::invalid_argument("linear image has the wrong length");
            }
            series img(alg, target, m_unit.trunc());
            for (std::size_t j = 0; j < target.size(); ++j) {
                if (images[i][j] != 0) {
                    img += series::variable(alg, target, m_unit.trunc(), target[j])
                               .scaled_rational(rational(images[i][j]));
                }
            }
            assign.emplace(vars()[i], std::move(img));
        }
        laurent_unit r;
        r.m_unit = substitute(m_unit, assign);
        for (const auto &[f, v] : m_divs) {
            r.add_divisor(image_of(f, images, target.size()), v);
        }
        return r;
    }

    // Divisor part only of substitute_linear; cheap, and used to reject malformed identities early.
    divisor_map substituted_divisors(const std::vector<std::vector<int>> &images, std::size_t target_nvars) const
    {
        laurent_unit r;
        for (const auto &[f, v] : m_divs) {
            r.add_normalized_sign_only(image_of(f, images, target_nvars), v);
        }
        return r.m_divs;
    }

    friend bool operator==(const laurent_unit &a, const laurent_unit &b)
    {
        return a.m_divs == b.m_divs && a.m_unit == b.m_unit;
    }

    std::string describe_divisors() const
    {
        std::string s;
        for (const auto &[f, v] : m_divs) {
            if (!s.empty()) {
                s += ", ";
            }
            s += "{" + format_linear_form(f, vars()) + "=0}:" + (v > 0 ? "+" : "") + std::to_string(v);
        }
        return s;
    }

    static void normalize(linear_form &f)
    {
        for (int c : f) {
            if (c != 0) {
                if (c < 0) {
                    for (int &d : f) {
                        d = -d;
                    }
                }
                return;
            }
        }
        throw std::domain_error("divisor label is the zero linear form");
    }

private:
    static linear_form image_of(const linear_form &f, const std::vector<std::vector<int>> &images,
                                std::size_t target_nvars)
    {
        linear_form g(target_nvars, 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (std::size_t j = 0; j < target_nvars; ++j) {
                g[j] += f[i] * images[i][j];
            }
        }
        return g;
    }

    void check_unit() const
    {
        if (!m_unit.algebra().is_unit(m_unit.constant_term())) {
            throw not_a_unit("unit part has a non-invertible constant term");
        }
        for (const auto &[f, v] : m_divs) {
            if (f.size() != m_unit.nvars()) {
                throw std::invalid_argument("divisor label does not match the variable count");
            }
        }
    }

    // (-f)^v = (-1)^v f^v: a sign flip of the label moves into the unit
    void add_divisor(linear_form f, int v)
    {
        const bool flipped = !f.empty() && leading(f) < 0;
        normalize(f);
        if (flipped && v % 2 != 0) {
            m_unit = -m_unit;
        }
        add_normalized(f, v);
    }

    void add_normalized_sign_only(linear_form f, int v)
    {
        normalize(f);
        add_normalized(f, v);
    }

    void add_normalized(const linear_form &f, int v)
    {
        if (v == 0) {
            return;
        }
        int &slot = m_divs[f];
        slot += v;
        if (slot == 0) {
            m_divs.erase(f);
        }
    }

    static int leading(const linear_form &f)
    {
        for (int c : f) {
            if (c != 0) {
                return c;
            }
        }
        return 0;
    }

    divisor_map m_divs;
    series m_unit;
};

} // namespace tmfcalc

#endif
