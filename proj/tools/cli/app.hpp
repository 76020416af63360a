#ifndef TMFCALC_TOOLS_CLI_APP_HPP
#define TMFCALC_TOOLS_CLI_APP_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tmfcalc/tmfcalc.hpp>

namespace tmfcalc::cli
{

enum exit_code : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_malformed = 3,
    exit_precision = 4,
};

class io_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Subcommand path and the library operations it exercises.
struct dispatch_entry {
    std::string path;
    std::vector<std::string> operations;
};

inline const std::vector<dispatch_entry> &dispatch_table()
{
    static const std::vector<dispatch_entry> t{
        {"fgl build", {"fgl_standard", "fgl_from_weierstrass", "series_arith", "series_invert", "substitute"}},
        {"fgl verify", {"fgl_verify", "fgl_standard", "fgl_from_weierstrass", "substitute"}},
        {"fgl log", {"fgl_log", "series_invert", "exp_log"}},
        {"cocycle check2", {"check_cocycle2", "substitute"}},
        {"cocycle check3", {"check_cocycle3", "substitute"}},
        {"cocycle coboundary", {"coboundary", "series_invert"}},
        {"cocycle bundle", {"virtual_bundle_identity"}},
        {"augideal", {"aug_ideal_correspondence"}},
        {"theta quasi", {"theta_u", "quasi_periodicity_check"}},
        {"theta cube", {"theta_u", "cube_invariance_check", "sigma_series", "cube_section", "verify_cube_conditions"}},
        {"theta sigma", {"sigma_series"}},
        {"theta divisor", {"cube_section", "divisor_of_section", "valuation_along"}},
        {"mf basis", {"mf_basis", "eisenstein", "delta"}},
        {"mf decompose", {"decompose"}},
        {"mf image24", {"mf12_membership"}},
        {"mf relation", {"eisenstein", "delta"}},
        {"witten genus", {"witten_genus", "genus_polynomial", "exp_log"}},
        {"witten polynomial", {"genus_polynomial"}},
        {"witten ahat", {"a_hat"}},
        {"witten modularity", {"modularity_check", "decompose"}},
        {"witten div24", {"div24_check"}},
        {"atkin up", {"u_p"}},
        {"atkin vp", {"v_p"}},
        {"atkin tp", {"t_p"}},
        {"atkin one-minus-up", {"one_minus_up"}},
        {"atkin kernel", {"kernel_search", "one_minus_up", "v_p"}},
    };
    return t;
}

namespace detail
{

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open input file " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string ok(bool b)
{
    return b ? "OK" : "FAIL";
}

inline std::string failure_suffix(const std::optional<exponent> &e)
{
    return e ? " at " + format_exponent(*e) : "";
}

inline std::string format_orders(const std::vector<int> &orders)
{
    std::string s;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        s += (i == 0 ? "Z/" : " x Z/") + std::to_string(orders[i]);
    }
    return s;
}

struct law_options {
    std::string curve;
    std::string kind = "additive";
};

inline void add_law_options(CLI::App *sub, law_options &o)
{
    sub->add_option("--curve", o.curve, "Weierstrass coefficients a1,a2,a3,a4,a6");
    sub->add_option("--law", o.kind, "standard law when no curve is given")
        ->check(CLI::IsMember({"additive", "multiplicative"}));
}

inline formal_group_law<scalar_algebra> make_law(const law_options &o, const coeff_ring &ring, int trunc)
{
    if (!o.curve.empty()) {
        return fgl_from_weierstrass(weierstrass_data::parse(o.curve), ring, trunc);
    }
    const scalar_algebra alg(ring);
    if (o.kind == "multiplicative") {
        return formal_group_law<scalar_algebra>::multiplicative(alg, trunc);
    }
    return formal_group_law<scalar_algebra>::additive(alg, trunc);
}

inline std::string describe_law(const law_options &o)
{
    if (!o.curve.empty()) {
        return "Weierstrass " + weierstrass_data::parse(o.curve).to_string();
    }
    return o.kind;
}

inline void print_condition(std::ostream &out, const std::string &name, const condition_result &r)
{
    out << name << " : " << ok(r.ok) << failure_suffix(r.first_failure) << "\n";
}

inline void print_qseries_block(std::ostream &out, const std::string &label, const qseries &f)
{
    out << label << " : " << to_text(f) << "\n";
}

} // namespace detail

// Runs the command line; args excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    using namespace detail;

    CLI::App app{"Exact computations with formal group laws, cocycles, theta functions, modular forms, the Witten "
                 "genus and the Atkin operator."};
    app.name("tmfcalc");
    app.require_subcommand(1, 1);
    app.fallthrough(true);

    unsigned threads = 1;
    std::uint64_t seed = 1;
    app.add_option("--threads", threads, "worker threads for the series kernels")->default_val(1);
    app.add_option("--seed", seed, "seed for randomized property runs")->default_val(1);

    std::int64_t qorder = 16;
    int zorder = 8;
    int padic = 3;
    std::string in_path, ring_name = "Q";
    law_options law;
    bool failed = false;

    std::vector<std::pair<CLI::App *, std::function<void()>>> handlers;
    auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &help) {
        return parent->add_subcommand(name, help);
    };
    auto add_qorder = [&](CLI::App *s) {
        s->add_option("--qorder", qorder, "q-adic truncation: coefficients of q^0 .. q^(N-1)")
            ->default_val(16)
            ->check(CLI::PositiveNumber);
    };
    auto add_zorder = [&](CLI::App *s) {
        s->add_option("--zorder", zorder, "total-degree truncation: terms of degree below Z")
            ->default_val(8)
            ->check(CLI::Range(2, 64));
    };
    auto add_in = [&](CLI::App *s, bool required = true) {
        auto *o = s->add_option("--in", in_path, "input file");
        if (required) {
            o->required();
        }
    };
    auto read_qseries = [&] { return parse_qseries_string(read_file(in_path)); };
    auto read_multi = [&] { return parse_multi_series_string(read_file(in_path)); };
    auto read_manifold = [&] { return parse_pontryagin_string(read_file(in_path)); };
    auto qtrunc = [&] { return static_cast<std::size_t>(qorder); };

    // fgl
    auto *fgl = app.add_subcommand("fgl", "formal group laws");
    fgl->require_subcommand(1, 1);
    int order = 8;
    auto add_fgl_common = [&](CLI::App *s) {
        add_law_options(s, law);
        s->add_option("--order", order, "total-degree truncation: terms of degree below D")
            ->default_val(8)
            ->check(CLI::Range(2, 64));
        s->add_option("--ring", ring_name, "coefficient ring Q, Z or Z/N")->default_val("Q");
    };
    auto *fgl_build = leaf(fgl, "build", "print the law and its inverse series");
    add_fgl_common(fgl_build);
    handlers.emplace_back(fgl_build, [&] {
        const auto g = make_law(law, coeff_ring::parse(ring_name), order);
        out << "# law " << describe_law(law) << "\n" << to_text(g.law());
        out << "# inverse\n" << to_text(g.inverse_series());
    });
    auto *fgl_verify = leaf(fgl, "verify", "check unit, commutativity, associativity and inverse");
    add_fgl_common(fgl_verify);
    add_in(fgl_verify, false);
    handlers.emplace_back(fgl_verify, [&] {
        const auto g = in_path.empty() ? make_law(law, coeff_ring::parse(ring_name), order)
                                       : formal_group_law<scalar_algebra>::from_series(read_multi());
        out << "F = " << to_expression(g.law()) << "\n";
        const auto r = verify(g);
        out << "unit : " << ok(r.unit.ok) << failure_suffix(r.unit.first_failure) << "\n";
        out << "commutativity : " << ok(r.commutativity.ok) << failure_suffix(r.commutativity.first_failure) << "\n";
        out << "associativity : " << ok(r.associativity.ok) << failure_suffix(r.associativity.first_failure) << "\n";
        out << "inverse : " << ok(r.inverse.ok) << failure_suffix(r.inverse.first_failure) << "\n";
        failed = !r.all_pass();
    });
    auto *fgl_lg = leaf(fgl, "log", "logarithm of the law over Q");
    add_fgl_common(fgl_lg);
    add_in(fgl_lg, false);
    handlers.emplace_back(fgl_lg, [&] {
        const auto g = in_path.empty() ? make_law(law, coeff_ring::parse(ring_name), order)
                                       : formal_group_law<scalar_algebra>::from_series(read_multi());
        out << to_text(fgl_log(g));
    });

    // cocycle
    auto *coc = app.add_subcommand("cocycle", "rigid symmetric cocycles");
    coc->require_subcommand(1, 1);
    auto *coc2 = leaf(coc, "check2", "check a two-variable candidate");
    add_in(coc2);
    add_law_options(coc2, law);
    handlers.emplace_back(coc2, [&] {
        const auto f = read_multi();
        const auto r = check_cocycle2(f, make_law(law, f.algebra().ring, f.trunc()));
        print_condition(out, "rigid", r.rigid);
        print_condition(out, "symmetric", r.symmetric);
        print_condition(out, "cocycle", r.cocycle);
        failed = !r.all_pass();
    });
    auto *coc3 = leaf(coc, "check3", "check a three-variable candidate");
    add_in(coc3);
    add_law_options(coc3, law);
    handlers.emplace_back(coc3, [&] {
        const auto f = read_multi();
        const auto r = check_cocycle3(f, make_law(law, f.algebra().ring, f.trunc()));
        print_condition(out, "rigid", r.rigid);
        print_condition(out, "symmetric", r.symmetric);
        print_condition(out, "cocycle(x,y)", r.cocycle[0]);
        print_condition(out, "cocycle(x,z)", r.cocycle[1]);
        print_condition(out, "cocycle(y,z)", r.cocycle[2]);
        failed = !r.all_pass();
    });
    int arity = 2;
    auto *cob = leaf(coc, "coboundary", "coboundary of a one-variable unit g(z)");
    add_in(cob);
    add_law_options(cob, law);
    cob->add_option("--arity", arity, "2 or 3")->default_val(2)->check(CLI::IsMember({2, 3}));
    handlers.emplace_back(cob, [&] {
        const auto gz = read_multi();
        const auto g = make_law(law, gz.algebra().ring, gz.trunc());
        if (arity == 2) {
            const auto f = coboundary(gz, g);
            out << to_text(f);
            out << "check2 : " << ok(check_cocycle2(f, g).all_pass()) << "\n";
        } else {
            const auto f = cube_coboundary(gz, g);
            out << to_text(f);
            out << "check3 : " << ok(check_cocycle3(f, g).all_pass()) << "\n";
        }
    });
    auto *bundle = leaf(coc, "bundle", "the virtual-bundle expansion as an exact Laurent identity");
    handlers.emplace_back(bundle, [&] {
        const bool r = virtual_bundle_identity();
        out << "virtual bundle identity : " << ok(r) << "\n";
        failed = !r;
    });

    // augideal
    auto *aug = app.add_subcommand("augideal", "module maps out of powers of the augmentation ideal");
    std::vector<int> group_orders;
    std::int64_t modulus = 2;
    int power = 2;
    aug->add_option("--group", group_orders, "cyclic factor orders, e.g. 2,2")->delimiter(',')->required();
    aug->add_option("--mod", modulus, "coefficient modulus N")->required();
    aug->add_option("--power", power, "power k of the ideal")->default_val(2);
    handlers.emplace_back(aug, [&] {
        finite_group_spec spec{group_orders, modulus};
        const auto r = aug_ideal_correspondence(spec, power);
        out << "group " << format_orders(group_orders) << ", coefficients Z/" << modulus << ", power " << power
            << "\n";
        out << "rank of I^" << power << " : " << r.ideal_rank << "\n";
        out << "module maps : " << r.module_maps.get_str() << "\n";
        out << "rigid symmetric cocycles : " << r.cocycle_functions.get_str() << "\n";
        out << "enumerated : " << (r.enumerated ? r.enumerated_count.get_str() : std::string("skipped")) << "\n";
        out << "counts agree : " << ok(r.counts_agree) << "\n";
        out << "map lands in solutions : " << ok(r.map_lands_in_solutions) << "\n";
        out << "map injective : " << ok(r.map_injective) << "\n";
        out << "bijection : " << ok(r.bijection) << "\n";
        failed = !(r.counts_agree && r.bijection);
    });

    // theta
    auto *theta = app.add_subcommand("theta", "Tate-curve theta function and the cube section");
    theta->require_subcommand(0, 1);
    bool quasi_flag = false, print_flag = false;
    theta->add_flag("--quasi-check", quasi_flag, "same as the quasi subcommand");
    add_qorder(theta);
    auto run_quasi = [&] {
        const auto th = theta_u(qtrunc());
        if (print_flag) {
            for (std::size_t n = 0; n < th.trunc(); ++n) {
                out << "q^" << n << " : " << th.layer(n).to_string({"u"}) << "\n";
            }
        }
        const auto r = quasi_periodicity_check(th);
        out << "Theta(q*u) = -q^-1*u^-1*Theta(u) below q^" << qorder << " : " << ok(r.ok);
        if (r.first_failure) {
            out << " at q^" << r.first_failure->first << " u^" << r.first_failure->second[0];
        }
        out << "\n";
        failed = !r.ok;
    };
    auto run_cube = [&] {
        const auto inv = cube_invariance_check(qtrunc());
        out << "theta cube ratio invariant under u_i -> q*u_i below q^" << qorder << " : " << ok(inv.all_pass());
        if (!inv.failure.empty()) {
            out << " (" << inv.failure << ")";
        }
        out << "\n";
        const auto s = cube_section(zorder, qtrunc());
        out << "section divisor " << s.describe_divisors() << "\n";
        const auto r = verify_cube_conditions(s);
        print_condition(out, "rigid", r.rigid);
        print_condition(out, "symmetric", r.symmetric);
        print_condition(out, "cocycle", r.cocycle);
        failed = !(inv.all_pass() && r.all_pass());
    };
    auto *tq = leaf(theta, "quasi", "check the quasi-periodicity of Theta");
    add_qorder(tq);
    tq->add_flag("--print", print_flag, "print the q-layers of Theta");
    handlers.emplace_back(tq, run_quasi);
    auto *tc = leaf(theta, "cube", "check the cube ratio and the cube section");
    add_qorder(tc);
    add_zorder(tc);
    handlers.emplace_back(tc, run_cube);
    auto *ts = leaf(theta, "sigma", "print sigma(z) with q-series coefficients");
    add_qorder(ts);
    add_zorder(ts);
    handlers.emplace_back(ts, [&] { out << to_text(sigma_series(zorder, qtrunc())); });
    auto *td = leaf(theta, "divisor", "divisor vector of the cube section");
    add_qorder(td);
    add_zorder(td);
    handlers.emplace_back(td, [&] {
        const auto s = cube_section(zorder, qtrunc());
        const auto g = formal_group_law<qseries_algebra>::additive(s.unit().algebra(), s.unit().trunc());
        const auto d = divisor_of_section(s, g);
        out << "divisor " << format_divisor_vector(d) << " : " << ok(d == expected_cube_divisor()) << "\n";
        failed = d != expected_cube_divisor();
    });
    handlers.emplace_back(theta, [&] {
        if (!quasi_flag) {
            throw CLI::CallForHelp();
        }
        run_quasi();
    });

    auto *cube = app.add_subcommand("cube", "same as theta cube");
    bool cube_verify = false;
    cube->add_flag("--verify", cube_verify, "run the checks")->required();
    add_qorder(cube);
    add_zorder(cube);
    handlers.emplace_back(cube, run_cube);

    // mf
    auto *mf = app.add_subcommand("mf", "level-1 modular forms");
    mf->require_subcommand(1, 1);
    int weight = 12;
    auto *mfb = leaf(mf, "basis", "the c4^a c6^b Delta^c basis");
    mfb->add_option("--weight", weight, "even weight")->required();
    add_qorder(mfb);
    handlers.emplace_back(mfb, [&] {
        const auto monos = mf_basis_monomials(weight);
        const auto basis = mf_basis(weight, qtrunc());
        out << "dimension " << monos.size() << "\n";
        for (std::size_t i = 0; i < monos.size(); ++i) {
            print_qseries_block(out, format_basis_monomial(monos[i]), basis[i].qexp);
        }
    });
    auto *mfd = leaf(mf, "decompose", "coordinates in the weight-W basis");
    mfd->add_option("--weight", weight, "even weight")->required();
    add_in(mfd);
    handlers.emplace_back(mfd, [&] {
        const auto d = decompose(read_qseries(), weight);
        const auto monos = mf_basis_monomials(weight);
        if (!d.ok) {
            out << "not a weight-" << weight << " form: residual nonzero at q^" << *d.inconsistent << "\n";
            failed = true;
            return;
        }
        for (std::size_t i = 0; i < monos.size(); ++i) {
            out << format_basis_monomial(monos[i]) << " : " << d.coords[i].get_str() << "\n";
        }
    });
    auto *mfi = leaf(mf, "image24", "membership in the lattice spanned by c4^3 and 24*Delta");
    add_in(mfi);
    handlers.emplace_back(mfi, [&] {
        const auto m = mf12_membership(read_qseries());
        out << "f = " << m.alpha.get_str() << "*c4^3 + " << m.beta.get_str() << "*Delta\n";
        out << "alpha = " << m.alpha.get_str() << ", beta/24 = " << rational(m.beta / 24).get_str() << " : "
            << (m.member ? "member" : "not a member") << "\n";
    });
    auto *mfr = leaf(mf, "relation", "check c4^3 - c6^2 = 1728*Delta");
    add_qorder(mfr);
    handlers.emplace_back(mfr, [&] {
        const qseries lhs = pow(c4(qtrunc()).qexp, 3) - pow(c6(qtrunc()).qexp, 2);
        const bool r = lhs == delta(qtrunc()).qexp * rational(1728);
        out << "c4^3 - c6^2 = 1728*Delta : " << ok(r) << "\n";
        failed = !r;
    });

    // witten
    auto *wit = app.add_subcommand("witten", "the Witten genus on Pontryagin data");
    wit->require_subcommand(0, 1);
    bool check_modularity = false;
    std::string shift_text = "1/7", poly_shift_text = "0";
    auto genus_body = [&] {
        const auto m = read_manifold();
        const auto g = witten_genus(m, qtrunc());
        out << "dim " << m.dim << ", weight " << g.weight << "\n";
        print_qseries_block(out, "phi_W", g.qexp);
        out << "A-hat = " << g.qexp[0].get_str() << "\n";
        if (check_modularity) {
            const auto r = modularity_check(m, qtrunc(), tmfcalc::detail::parse_rational(shift_text));
            if (r.decomp.ok) {
                const auto monos = mf_basis_monomials(g.weight);
                for (std::size_t i = 0; i < monos.size(); ++i) {
                    out << format_basis_monomial(monos[i]) << " : " << r.decomp.coords[i].get_str() << "\n";
                }
            }
            out << "modular of weight " << g.weight << " : " << ok(r.decomp.ok) << "\n";
            out << "invariant under G2 shift " << r.g2_shift.get_str() << " : " << ok(r.g2_invariant) << "\n";
            failed = !r.all_pass();
        }
    };
    add_in(wit, false);
    add_qorder(wit);
    wit->add_flag("--check-modularity", check_modularity, "decompose and test G2 invariance");
    handlers.emplace_back(wit, [&] {
        if (in_path.empty()) {
            throw CLI::CallForHelp();
        }
        genus_body();
    });
    auto *wg = leaf(wit, "genus", "q-expansion of the genus");
    add_in(wg);
    add_qorder(wg);
    wg->add_flag("--check-modularity", check_modularity, "decompose and test G2 invariance");
    handlers.emplace_back(wg, genus_body);
    int degree = 1;
    auto *wp = leaf(wit, "polynomial", "the genus as a polynomial in Pontryagin classes");
    wp->add_option("--degree", degree, "k for dimension 4k")->required()->check(CLI::Range(1, 12));
    add_qorder(wp);
    wp->add_option("--g2-shift", poly_shift_text, "perturbation of the G2 term")->default_val("0");
    handlers.emplace_back(wp, [&] {
        const auto poly = genus_polynomial(degree, qtrunc(), tmfcalc::detail::parse_rational(poly_shift_text));
        std::map<partition, qseries> sorted;
        for (const auto &[mono, c] : poly) {
            sorted.emplace(to_partition(mono), c);
        }
        for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
            print_qseries_block(out, format_partition(it->first), it->second);
        }
    });
    auto *wa = leaf(wit, "ahat", "the A-hat genus");
    add_in(wa);
    handlers.emplace_back(wa, [&] { out << "A-hat = " << a_hat(read_manifold()).get_str() << "\n"; });
    auto *wm = leaf(wit, "modularity", "decompose the genus of string-like data");
    add_in(wm);
    add_qorder(wm);
    wm->add_option("--g2-shift", shift_text, "perturbation of the G2 term")->default_val("1/7");
    handlers.emplace_back(wm, [&] {
        check_modularity = true;
        genus_body();
    });
    std::string alpha_text = "1", beta_text = "0";
    long random_count = 0;
    auto *wd = leaf(wit, "div24", "q^1 of alpha*c4^3 + beta*24*Delta modulo 24");
    wd->add_option("--alpha", alpha_text, "integer")->default_val("1");
    wd->add_option("--beta", beta_text, "integer")->default_val("0");
    wd->add_option("--random", random_count, "check this many random pairs drawn with --seed instead")
        ->default_val(0)
        ->check(CLI::NonNegativeNumber);
    handlers.emplace_back(wd, [&] {
        if (random_count > 0) {
            std::mt19937_64 rng(seed);
            long bad = 0;
            for (long i = 0; i < random_count; ++i) {
                const integer a = static_cast<long>(rng() % 2000001) - 1000000;
                const integer b = static_cast<long>(rng() % 2000001) - 1000000;
                const auto r = div24_check(a, b);
                if (!r.divisible) {
                    out << "counterexample alpha = " << a.get_str() << ", beta = " << b.get_str() << "\n";
                    ++bad;
                }
            }
            out << random_count << " random pairs, seed " << seed << ", q1 = 0 (mod 24) : " << ok(bad == 0) << "\n";
            failed = bad != 0;
            return;
        }
        integer a, b;
        if (a.set_str(alpha_text, 10) != 0 || b.set_str(beta_text, 10) != 0) {
            throw std::invalid_argument("alpha and beta must be integers");
        }
        const auto r = div24_check(a, b);
        integer residue = r.q1 % 24;
        if (residue < 0) {
            residue += 24;
        }
        out << "q1 = " << r.q1.get_str() << " ≡ " << residue.get_str() << " (mod 24) : " << ok(r.divisible) << "\n";
        failed = !r.divisible;
    });

    // atkin
    auto *atk = app.add_subcommand("atkin", "the Atkin operator and 1 - U_p");
    atk->require_subcommand(1, 1);
    long p = 2;
    auto add_p = [&](CLI::App *s) { s->add_option("--p", p, "prime")->required(); };
    auto *au = leaf(atk, "up", "apply U_p");
    add_p(au);
    add_in(au);
    handlers.emplace_back(au, [&] { out << to_text(u_p(read_qseries(), p)) << "\n"; });
    auto *av = leaf(atk, "vp", "apply V_p");
    add_p(av);
    add_in(av);
    handlers.emplace_back(av, [&] { out << to_text(v_p(read_qseries(), p)) << "\n"; });
    auto *a1 = leaf(atk, "one-minus-up", "apply 1 - U_p");
    add_p(a1);
    add_in(a1);
    handlers.emplace_back(a1, [&] { out << to_text(one_minus_up(read_qseries(), p)) << "\n"; });
    auto *at = leaf(atk, "tp", "apply the Hecke operator T_p in weight K");
    add_p(at);
    add_in(at);
    at->add_option("--weight", weight, "weight of the input form")->required();
    handlers.emplace_back(at, [&] {
        const modular_form f{weight, read_qseries()};
        const auto g = t_p(f, p);
        out << to_text(g.qexp) << "\n";
        const qseries base = f.qexp.truncated(g.qexp.trunc());
        const std::size_t lead = base.order();
        if (lead < base.trunc()) {
            const rational lambda = g.qexp[lead] / base[lead];
            if (g.qexp == base * lambda) {
                out << "eigenvalue " << lambda.get_str() << " below q^" << g.qexp.trunc() << "\n";
                return;
            }
        }
        out << "not an eigenform below q^" << g.qexp.trunc() << "\n";
    });
    auto *ak = leaf(atk, "kernel", "kernel of 1 - U_p mod p^M on forms of weight K and their V_p images");
    add_p(ak);
    ak->add_option("--padic", padic, "p-adic precision M")->default_val(3)->check(CLI::PositiveNumber);
    ak->add_option("--weight", weight, "even weight")->required();
    add_qorder(ak);
    handlers.emplace_back(ak, [&] {
        const auto r = kernel_search(weight, p, padic, qtrunc());
        out << "modulus " << r.modulus << ", q-order " << r.trunc_q << "\n";
        out << "columns";
        for (const auto &c : r.column_names) {
            out << " " << c;
        }
        out << "\n";
        out << "kernel size " << r.kernel_size.get_str() << ", generators " << r.kernel.size() << "\n";
        for (std::size_t i = 0; i < r.kernel.size(); ++i) {
            out << "g" << i << " = (";
            for (std::size_t j = 0; j < r.kernel_coords[i].size(); ++j) {
                out << (j ? "," : "") << r.kernel_coords[i][j];
            }
            out << ") : " << to_text(r.kernel[i]) << "\n";
        }
        if (weight >= 4) {
            const bool c = kernel_contains(r, eisenstein_p_witness(weight, p, r.trunc_q));
            out << "E" << weight << " - " << p << "^" << weight - 1 << "*V" << p << "(E" << weight
                << ") in kernel : " << ok(c) << "\n";
            failed = !c;
        } else if (weight == 0) {
            const bool c = kernel_contains(r, qseries::constant(coeff_ring::Q(), r.trunc_q, 1));
            out << "1 in kernel : " << ok(c) << "\n";
            failed = !c;
        }
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? exit_ok : exit_usage;
    }
    set_thread_count(threads);

    CLI::App *chosen = nullptr;
    for (auto &[sub, fn] : handlers) {
        if (sub->parsed() && sub->get_subcommands().empty()) {
            chosen = sub;
        }
    }
    try {
        for (auto &[sub, fn] : handlers) {
            if (sub == chosen) {
                fn();
            }
        }
    } catch (const CLI::CallForHelp &) {
        out << chosen->help();
        return exit_usage;
    } catch (const parse_error &e) {
        err << "error: malformed input: " << e.what() << "\n";
        return exit_malformed;
    } catch (const precision_error &e) {
        err << "error: insufficient precision: " << e.what() << " (required minimum " << e.required() << ")\n";
        return exit_precision;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return failed ? exit_failure : exit_ok;
}

} // namespace tmfcalc::cli

#endif
