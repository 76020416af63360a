#ifndef TMFCALC_SERIES_TEXT_FORMAT_HPP
#define TMFCALC_SERIES_TEXT_FORMAT_HPP

#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/series/multi_series.hpp>
#include <tmfcalc/series/qseries.hpp>

// Text forms:
//   q-series      ring=Q; trunc=4; coeffs=1,0,-1/2,0
//   multi-series  ring=Q; vars=x,y; trunc=8      (header line)
//                 1,0 : 1                        (one line per nonzero term, grlex order)
// Blank lines and lines starting with '#' are ignored by the parsers.

namespace tmfcalc
{

namespace detail
{

inline std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline long parse_long(const std::string &s, int line, const char *what)
{
    if (s.empty()) {
        throw parse_error(std::string("missing ") + what, line);
    }
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception &) {
        throw parse_error(std::string("malformed ") + what + " '" + s + "'", line);
    }
    if (pos != s.size()) {
        throw parse_error(std::string("malformed ") + what + " '" + s + "'", line);
    }
    return v;
}

// key=value fields separated by ';'
inline std::map<std::string, std::string> parse_fields(const std::string &line, int lineno)
{
    std::map<std::string, std::string> out;
    for (const auto &part : split(line, ';')) {
        if (part.empty()) {
            continue;
        }
        const auto eq = part.find('=');
        if (eq == std::string::npos) {
            throw parse_error("expected key=value, got '" + part + "'", lineno);
        }
        out[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
    }
    return out;
}

inline const std::string &require_field(const std::map<std::string, std::string> &f, const std::string &key,
                                        int lineno)
{
    auto it = f.find(key);
    if (it == f.end()) {
        throw parse_error("missing field '" + key + "'", lineno);
    }
    return it->second;
}

inline rational parse_number_at(const std::string &s, int lineno)
{
    try {
        return parse_rational(s);
    } catch (const parse_error &e) {
        throw parse_error(e.what(), lineno);
    }
}

} // namespace detail

inline std::string to_text(const qseries &s)
{
    std::string out = "ring=" + s.ring().to_string() + "; trunc=" + std::to_string(s.trunc()) + "; coeffs=";
    for (std::size_t i = 0; i < s.trunc(); ++i) {
        if (i != 0) {
            out += ",";
        }
        out += s[i].get_str();
    }
    return out;
}

inline qseries parse_qseries_line(const std::string &line, int lineno = 1)
{
    const auto fields = detail::parse_fields(line, lineno);
    coeff_ring ring;
    try {
        ring = coeff_ring::parse(detail::require_field(fields, "ring", lineno));
    } catch (const parse_error &e) {
        if (e.line() > 0) {
            throw;
        }
        throw parse_error(e.what(), lineno);
    }
    const long trunc = detail::parse_long(detail::require_field(fields, "trunc", lineno), lineno, "truncation");
    if (trunc < 0) {
        throw parse_error("negative truncation", lineno);
    }
    const std::string &body = detail::require_field(fields, "coeffs", lineno);
    std::vector<rational> coeffs;
    if (!body.empty()) {
        for (const auto &tok : detail::split(body, ',')) {
            coeffs.push_back(detail::parse_number_at(tok, lineno));
        }
    }
    if (static_cast<long>(coeffs.size()) != trunc) {
        throw parse_error("expected " + std::to_string(trunc) + " coefficients, got " + std::to_string(coeffs.size()),
                          lineno);
    }
    try {
        return qseries(ring, std::move(coeffs));
    } catch (const std::domain_error &e) {
        throw parse_error(e.what(), lineno);
    }
}

// Reads the first non-comment line of a stream as a q-series.
inline qseries parse_qseries(std::istream &in)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        return parse_qseries_line(t, lineno);
    }
    throw parse_error("no q-series found in input", lineno > 0 ? lineno : 1);
}

template <typename Alg>
std::string to_text(const multi_series<Alg> &f)
{
    std::string out = "ring=" + f.algebra().describe() + "; vars=";
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        if (i != 0) {
            out += ",";
        }
        out += f.vars()[i];
    }
    out += "; trunc=" + std::to_string(f.trunc()) + "\n";
    for (const auto &[e, c] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i != 0) {
                out += ",";
            }
            out += std::to_string(e[i]);
        }
        out += " : " + f.algebra().format(c) + "\n";
    }
    return out;
}

inline multi_series<scalar_algebra> parse_multi_series(std::istream &in)
{
    std::string line;
    int lineno = 0;
    bool have_header = false;
    multi_series<scalar_algebra> f;
    std::map<exponent, bool> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        if (!have_header) {
            const auto fields = detail::parse_fields(t, lineno);
            coeff_ring ring;
            try {
                ring = coeff_ring::parse(detail::require_field(fields, "ring", lineno));
            } catch (const parse_error &e) {
                if (e.line() > 0) {
                    throw;
                }
                throw parse_error(e.what(), lineno);
            }
            auto vars = detail::split(detail::require_field(fields, "vars", lineno), ',');
            for (const auto &v : vars) {
                if (v.empty()) {
                    throw parse_error("empty variable name", lineno);
                }
            }
            const long trunc = detail::parse_long(detail::require_field(fields, "trunc", lineno), lineno, "truncation");
            if (trunc < 0) {
                throw parse_error("negative truncation", lineno);
            }
            try {
                f = multi_series<scalar_algebra>(scalar_algebra(ring), vars, static_cast<int>(trunc));
            } catch (const std::invalid_argument &e) {
                throw parse_error(e.what(), lineno);
            }
            have_header = true;
            continue;
        }
        const auto colon = t.find(':');
        if (colon == std::string::npos) {
            throw parse_error("expected 'exponents : coefficient'", lineno);
        }
        exponent e;
        for (const auto &tok : detail::split(t.substr(0, colon), ',')) {
            const long v = detail::parse_long(tok, lineno, "exponent");
            if (v < 0) {
                throw parse_error("negative exponent", lineno);
            }
            e.push_back(static_cast<int>(v));
        }
        if (e.size() != f.nvars()) {
            throw parse_error("exponent has " + std::to_string(e.size()) + " entries, expected "
                                  + std::to_string(f.nvars()),
                              lineno);
        }
        if (total_degree(e) >= f.trunc()) {
            throw parse_error("term of total degree " + std::to_string(total_degree(e))
                                  + " is at or beyond the truncation " + std::to_string(f.trunc()),
                              lineno);
        }
        if (seen.count(e) != 0) {
            throw parse_error("duplicate exponent " + format_exponent(e), lineno);
        }
        seen[e] = true;
        rational c = detail::parse_number_at(detail::trim(t.substr(colon + 1)), lineno);
        try {
            f.add_term(e, f.algebra().from_rational(c));
        } catch (const std::domain_error &ex) {
            throw parse_error(ex.what(), lineno);
        }
    }
    if (!have_header) {
        throw parse_error("no multi-series header found in input", lineno > 0 ? lineno : 1);
    }
    return f;
}

// "x + y - 2*x^2*y" style rendering of a scalar series, terms in grlex order
inline std::string to_expression(const multi_series<scalar_algebra> &f)
{
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &[e, c] : f.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += f.vars()[i];
            if (e[i] != 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        const bool negative = c < 0;
        const rational mag = negative ? rational(-c) : c;
        std::string term;
        if (mono.empty()) {
            term = mag.get_str();
        } else if (mag == 1) {
            term = mono;
        } else {
            term = mag.get_str() + "*" + mono;
        }
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += (negative ? " - " : " + ") + term;
        }
    }
    return out;
}

inline qseries parse_qseries_string(const std::string &s)
{
    std::istringstream in(s);
    return parse_qseries(in);
}

inline multi_series<scalar_algebra> parse_multi_series_string(const std::string &s)
{
    std::istringstream in(s);
    return parse_multi_series(in);
}

} // namespace tmfcalc

#endif
