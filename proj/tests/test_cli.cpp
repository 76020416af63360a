#include <gtest/gtest.h>

#include <set>

#include "cli_harness.hpp"

namespace
{

const std::string samples = TMFCALC_SAMPLES_DIR;
const std::string golden_dir = TMFCALC_GOLDEN_DIR;

int run(const std::vector<std::string> &args, std::string *out = nullptr, std::string *err = nullptr)
{
    std::ostringstream o, e;
    const int rc = tmfcalc::cli::run(args, o, e);
    if (out != nullptr) {
        *out = o.str();
    }
    if (err != nullptr) {
        *err = e.str();
    }
    return rc;
}

} // namespace

TEST(Golden, TranscriptsMatchAtOneAndFourThreads)
{
    const auto cases = golden::load_cases(golden_dir);
    ASSERT_FALSE(cases.empty());
    for (const auto &c : cases) {
        const auto want = golden::read_file(golden_dir + "/" + c.name + ".out");
        EXPECT_EQ(golden::transcript(c, samples, 1), want) << c.name;
        EXPECT_EQ(golden::transcript(c, samples, 4), want) << c.name;
    }
}

TEST(Golden, RepeatedRunsAreByteIdentical)
{
    for (const auto &c : golden::load_cases(golden_dir)) {
        EXPECT_EQ(golden::transcript(c, samples, 2), golden::transcript(c, samples, 2)) << c.name;
    }
}

TEST(Dispatch, EveryOperationIsReachable)
{
    const std::set<std::string> required{
        "fgl_standard", "fgl_from_weierstrass", "fgl_verify", "fgl_log", "check_cocycle2", "check_cocycle3",
        "coboundary", "virtual_bundle_identity", "aug_ideal_correspondence", "theta_u", "quasi_periodicity_check",
        "cube_invariance_check", "cube_section", "verify_cube_conditions", "divisor_of_section", "mf_basis",
        "decompose", "mf12_membership", "witten_genus", "modularity_check", "div24_check", "u_p", "t_p",
        "kernel_search", "v_p", "one_minus_up", "a_hat", "genus_polynomial", "sigma_series", "valuation_along"};
    std::set<std::string> covered;
    for (const auto &entry : tmfcalc::cli::dispatch_table()) {
        covered.insert(entry.operations.begin(), entry.operations.end());
        std::vector<std::string> args;
        std::istringstream words(entry.path);
        for (std::string w; words >> w;) {
            args.push_back(w);
        }
        args.push_back("--help");
        std::string out;
        EXPECT_EQ(run(args, &out), tmfcalc::cli::exit_ok) << entry.path;
        EXPECT_NE(out.find("Usage"), std::string::npos) << entry.path;
    }
    for (const auto &op : required) {
        EXPECT_TRUE(covered.count(op)) << op;
    }
}

TEST(ExitCodes, Classes)
{
    std::string out, err;
    EXPECT_EQ(run({"mf", "relation"}), tmfcalc::cli::exit_ok);
    EXPECT_EQ(run({"fgl", "verify", "--in", samples + "/bad_law.txt"}), tmfcalc::cli::exit_failure);
    EXPECT_EQ(run({"fgl", "build", "--law", "quadratic"}), tmfcalc::cli::exit_usage);
    EXPECT_EQ(run({"nonsense"}), tmfcalc::cli::exit_usage);
    EXPECT_EQ(run({"witten", "genus", "--in", samples + "/malformed_manifold.txt"}, &out, &err),
              tmfcalc::cli::exit_malformed);
    EXPECT_NE(err.find("line 3"), std::string::npos);
    EXPECT_EQ(run({"mf", "decompose", "--in", samples + "/short_delta.txt", "--weight", "12"}, &out, &err),
              tmfcalc::cli::exit_precision);
    EXPECT_NE(err.find("(required minimum 3)"), std::string::npos);
    EXPECT_EQ(run({"mf", "image24", "--in", samples + "/missing.txt"}), tmfcalc::cli::exit_failure);
    EXPECT_EQ(run({"mf", "image24", "--in", samples + "/ones.txt"}, &out, &err), tmfcalc::cli::exit_failure);
}

TEST(Options, SeedChangesRandomDraws)
{
    std::string a, b, c;
    run({"witten", "div24", "--random", "5", "--seed", "3"}, &a);
    run({"--seed", "3", "witten", "div24", "--random", "5"}, &b);
    run({"witten", "div24", "--random", "5", "--seed", "4"}, &c);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}
