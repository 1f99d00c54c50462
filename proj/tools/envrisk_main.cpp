// Command line front end: compute risk reports from scenario CSVs, price the
// lognormal-derivative example, and run the randomized verification suites.
//
// Exit codes: 0 success, 2 malformed scenario CSV, 3 invalid configuration
// or flags, 4 numeric failure, 5 verification violation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "envrisk/errors.hpp"
#include "envrisk/gbm.hpp"
#include "envrisk/report.hpp"
#include "envrisk/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadCsv = 2;
constexpr int kExitBadConfig = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitViolation = 5;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) envrisk::fail(envrisk::errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_compute(const std::string& scenarios_path, const std::string& config_path,
                const std::string& out_path, bool no_meta) {
    envrisk::ScenarioTable table;
    std::string scenarios_bytes;
    try {
        scenarios_bytes = slurp(scenarios_path);
        std::istringstream in(scenarios_bytes);
        table = envrisk::read_scenario_csv(in);
    } catch (const std::exception& e) {
        std::cerr << "error: scenario csv: " << e.what() << "\n";
        return kExitBadCsv;
    }

    envrisk::ComputeConfig cfg;
    std::string config_bytes;
    try {
        config_bytes = slurp(config_path);
        cfg = envrisk::compute_config_from_json(envrisk::json::parse(config_bytes));
    } catch (const std::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kExitBadConfig;
    }

    envrisk::json report;
    try {
        report = envrisk::build_risk_report(table, cfg, scenarios_path,
                                            envrisk::fnv1a64_hex(scenarios_bytes), config_path,
                                            envrisk::fnv1a64_hex(config_bytes), !no_meta);
    } catch (const envrisk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == envrisk::errc::binning_infeasible ? kExitBadConfig : kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }

    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitNumeric;
        }
        out << text;
    }
    return kExitOk;
}

int cmd_gbm(const envrisk::GbmSpec& spec, int states, bool check) {
    double closed = 0.0;
    try {
        envrisk::validate(spec);
        closed = envrisk::closed_form_rho(spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    std::printf("closed_form %.12f\n", closed);
    if (!check) return kExitOk;

    double piped = 0.0;
    try {
        piped = envrisk::pipeline_rho(spec, states);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    const double rel = std::abs(piped - closed) / std::max(1.0, std::abs(closed));
    const bool pass = rel < 5e-3;
    std::printf("pipeline    %.12f  (states=%d)\n", piped, states);
    std::printf("rel_gap     %.3e\n", rel);
    std::printf("check       %s (tolerance 5.0e-03)\n", pass ? "PASS" : "FAIL");
    return pass ? kExitOk : kExitViolation;
}

int cmd_verify(const std::string& suite, long trials, int models, std::uint64_t seed) {
    using namespace envrisk;
    if (suite == "coherence") {
        const CoherenceReport r = coherence_suite_mixed(seed, static_cast<int>(trials));
        std::printf("suite coherence: trials=%ld\n", r.trials);
        std::printf("  monotonicity    violations=%ld worst=%.3e\n", r.monotonicity_violations,
                    r.worst_monotonicity);
        std::printf("  translation     violations=%ld worst=%.3e\n", r.translation_violations,
                    r.worst_translation);
        std::printf("  homogeneity     violations=%ld worst=%.3e\n", r.homogeneity_violations,
                    r.worst_homogeneity);
        std::printf("  subadditivity   violations=%ld worst=%.3e\n", r.subadditivity_violations,
                    r.worst_subadditivity);
        std::printf("result %s\n", r.ok() ? "PASS" : "FAIL");
        return r.ok() ? kExitOk : kExitViolation;
    }
    if (suite == "dual") {
        const DualSuiteReport r = run_dual_suite(seed, models, trials);
        std::printf("suite dual: models=%ld pairs_per_model=%ld\n", r.models,
                    r.trials_per_model);
        std::printf("  bound exceedances    %ld (worst overshoot %.3e)\n", r.exceed_count,
                    r.worst_overshoot);
        std::printf("  attainment failures  %ld (worst gap %.3e)\n", r.attainment_failures,
                    r.worst_attained_gap);
        std::printf("result %s\n", r.ok() ? "PASS" : "FAIL");
        return r.ok() ? kExitOk : kExitViolation;
    }
    if (suite == "recovery") {
        const RecoverySuiteReport r = run_recovery_suite(seed, models);
        std::printf("suite recovery: models=%ld probes=%ld\n", r.models, r.probes);
        std::printf("  violations  %ld\n", r.violations);
        std::printf("  worst inner delta %.3e\n", r.worst_inner_delta);
        std::printf("  worst outer delta %.3e\n", r.worst_outer_delta);
        std::printf("result %s\n", r.ok() ? "PASS" : "FAIL");
        return r.ok() ? kExitOk : kExitViolation;
    }
    if (suite == "background") {
        const BackgroundSuiteReport r = run_background_suite(seed, models);
        std::printf("suite background: models=%ld\n", r.models);
        std::printf("  violations  %ld\n", r.violations);
        std::printf("  worst sandwich slack %.3e\n", r.worst_sandwich_slack);
        std::printf("  worst gamma gap      %.3e\n", r.worst_gamma_gap);
        std::printf("  worst bound order    %.3e\n", r.worst_bound_order);
        std::printf("  worst ls mass error  %.3e\n", r.worst_ls_mass_error);
        std::printf("result %s\n", r.ok() ? "PASS" : "FAIL");
        return r.ok() ? kExitOk : kExitViolation;
    }
    std::cerr << "error: unknown suite '" << suite << "'\n";
    return kExitBadConfig;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-layer distortion risk measures on scenario models"};
    app.require_subcommand(1);

    std::string scenarios_path, config_path, out_path;
    bool no_meta = false;
    CLI::App* compute = app.add_subcommand("compute", "risk report from a scenario CSV");
    compute->add_option("--scenarios", scenarios_path, "scenario CSV (weight,x,z[,y])")
        ->required();
    compute->add_option("--config", config_path, "JSON config")->required();
    compute->add_option("--out", out_path, "output path (stdout when omitted)");
    compute->add_flag("--no-meta", no_meta, "omit timing metadata for byte-stable output");

    envrisk::GbmSpec gbm_spec;
    int gbm_states = 2000;
    bool gbm_check = false;
    CLI::App* gbm = app.add_subcommand("gbm", "lognormal-derivative closed form");
    gbm->add_option("--r", gbm_spec.r, "short rate")->capture_default_str();
    gbm->add_option("--sigma", gbm_spec.sigma, "environment volatility")->capture_default_str();
    gbm->add_option("--sigma2", gbm_spec.sigma2, "conditional loss volatility")
        ->capture_default_str();
    gbm->add_option("--a", gbm_spec.a, "inner avar level")->capture_default_str();
    gbm->add_option("--b", gbm_spec.b, "outer avar level")->capture_default_str();
    gbm->add_option("--states", gbm_states, "pipeline state count for --check")
        ->capture_default_str();
    gbm->add_flag("--check", gbm_check, "cross-check against the scenario pipeline");

    std::string suite;
    long trials = 0;
    int models = 0;
    std::uint64_t seed = 42;
    CLI::App* verify = app.add_subcommand("verify", "randomized structural suites");
    verify->add_option("--suite", suite, "coherence | dual | recovery | background")->required();
    verify->add_option("--trials", trials, "trial count (suite-specific default)");
    verify->add_option("--models", models, "model count (suite-specific default)");
    verify->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (compute->parsed()) return cmd_compute(scenarios_path, config_path, out_path, no_meta);
        if (gbm->parsed()) return cmd_gbm(gbm_spec, gbm_states, gbm_check);
        if (verify->parsed()) {
            if (trials <= 0) trials = suite == "dual" ? 10000 : 500;
            if (models <= 0) {
                if (suite == "dual") models = 50;
                else if (suite == "recovery") models = 20;
                else models = 200;
            }
            return cmd_verify(suite, trials, models, seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitBadConfig;
}
