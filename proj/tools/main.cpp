// Command-line front end: single-point rate evaluation, config-driven
// parameter sweeps, figure presets and the invariant selftest.

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cellrate/errors.hpp"
#include "cellrate/mcp_rate.hpp"
#include "cellrate/scp_rate.hpp"
#include "cellrate/sweep.hpp"

namespace {

using namespace cellrate;

constexpr int kExitOk = 0;
constexpr int kExitInvariantViolation = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

std::complex<double> parse_tap(const std::string& token) {
    if (!token.empty() && token.front() == '(') {
        std::istringstream in(token);
        std::complex<double> value;
        in >> value;
        if (!in) throw ConfigError("invalid tap: " + token);
        return value;
    }
    try {
        std::size_t pos = 0;
        const double value = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return {value, 0.0};
    } catch (const std::exception&) {
        throw ConfigError("invalid tap: " + token);
    }
}

std::optional<SimConfig> parse_validate(const std::string& text) {
    if (text.empty()) return std::nullopt;
    int m = 0, trials = 0;
    unsigned long long seed = 0;
    if (std::sscanf(text.c_str(), "%d,%d,%llu", &m, &trials, &seed) != 3)
        throw ConfigError("--validate expects M,trials,seed");
    return SimConfig(m, trials, seed);
}

struct RateOptions {
    double alpha0 = 1.0;
    double alpha1 = 0.5;
    std::vector<std::string> taps;
    int l1 = 0;
    std::string scheme = "apc";
    int K = 5;
    double q = 0.3;
    double power_db = 5.0;
    std::string processing = "both";
    std::string validate;
};

ChannelProfile profile_from_options(const RateOptions& opt) {
    if (!opt.taps.empty()) {
        std::vector<std::complex<double>> taps;
        for (const auto& token : opt.taps) taps.push_back(parse_tap(token));
        const int l2 = static_cast<int>(taps.size()) - opt.l1 - 1;
        if (l2 < 0) throw ConfigError("--l1 exceeds the tap count");
        return ChannelProfile(opt.l1, l2, taps);
    }
    return ChannelProfile::sho(opt.alpha0, opt.alpha1);
}

int run_rate(const RateOptions& opt) {
    const ChannelProfile profile = profile_from_options(opt);
    const double power = db_to_linear(opt.power_db);
    const ActivityModel model(opt.K, opt.q, power);
    const Scheme scheme = scheme_from_string(opt.scheme);
    const VirtualGainDistribution dist = scheme_distribution(scheme, model);
    const auto validate = parse_validate(opt.validate);

    std::vector<Processing> kinds;
    if (opt.processing == "both") {
        kinds = {Processing::MCP, Processing::SCP};
    } else {
        kinds = {processing_from_string(opt.processing)};
    }

    for (Processing processing : kinds) {
        double rate = 0.0;
        if (processing == Processing::MCP) {
            if (scheme == Scheme::APC && profile.is_sho()) {
                rate = mcp_rate_erasure(profile, std::pow(opt.q, opt.K), power);
            } else {
                rate = mcp_rate_general(profile, dist, 1.0);
            }
        } else {
            try {
                rate = scp_rate_exact(profile, dist);
            } catch (const SupportTooLargeError&) {
                rate = scp_rate_mc(profile, dist, 1000000, validate ? validate->seed : 1).mean;
            }
        }
        std::printf("%s %s rate_bits=%.12g", to_string(processing).c_str(),
                    to_string(scheme).c_str(), rate);
        if (validate) {
            McEstimate estimate{0.0, 0.0};
            if (processing == Processing::MCP) {
                estimate = estimate_throughput(profile, dist, *validate);
            } else {
                const auto samples = static_cast<std::uint64_t>(validate->M) *
                                     static_cast<std::uint64_t>(validate->trials);
                estimate = scp_rate_mc(profile, dist, samples, validate->seed);
            }
            std::printf(" oracle_mean=%.12g oracle_stderr=%.12g", estimate.mean,
                        estimate.std_error);
        }
        std::printf("\n");
    }
    return kExitOk;
}

int emit_sweep(const SweepSpec& spec, const std::string& out_path) {
    const SweepResult result = run_sweep(spec);

    bool any_failed_row = false;
    for (const auto& row : result.rows) {
        if (!row.ok) {
            any_failed_row = true;
            std::cerr << "row failed: " << to_string(result.param) << "=" << row.sweep_value << " "
                      << to_string(row.scheme) << "/" << to_string(row.processing) << ": "
                      << row.error << "\n";
        }
    }

    const auto violations = ordering_violations(result);
    if (out_path.empty()) {
        emit_csv(result, std::cout);
    } else {
        emit_csv(result, out_path);
    }
    if (!violations.empty()) {
        std::cerr << "ordering invariant violations:\n";
        for (const auto& violation : violations) std::cerr << "  " << violation << "\n";
        return kExitInvariantViolation;
    }
    if (any_failed_row) return kExitNumericalFailure;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Per-cell uplink throughput of a linear cellular array with random user "
                 "activity and cooperative base stations"};
    app.require_subcommand(1);

    RateOptions rate_options;
    auto* rate_cmd = app.add_subcommand("rate", "Evaluate one parameter point");
    rate_cmd->add_option("--alpha0", rate_options.alpha0, "Own-cell amplitude gain");
    rate_cmd->add_option("--alpha1", rate_options.alpha1, "Adjacent-cell amplitude gain");
    rate_cmd->add_option("--taps", rate_options.taps,
                         "Full tap list (reals or (re,im)); overrides --alpha0/--alpha1");
    rate_cmd->add_option("--l1", rate_options.l1, "Taps to the left of the own-cell tap");
    rate_cmd->add_option("--scheme", rate_options.scheme, "npc, apc or cpc")
        ->check(CLI::IsMember({"npc", "apc", "cpc"}));
    rate_cmd->add_option("--K", rate_options.K, "Users per cell");
    rate_cmd->add_option("--q", rate_options.q, "Non-activity probability");
    rate_cmd->add_option("--power-db", rate_options.power_db, "Total cell power, dB");
    rate_cmd->add_option("--processing", rate_options.processing, "mcp, scp or both")
        ->check(CLI::IsMember({"mcp", "scp", "both"}));
    rate_cmd->add_option("--validate", rate_options.validate,
                         "Cross-check with the finite-size oracle: M,trials,seed");

    std::string config_path;
    std::string out_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep described by a config file");
    sweep_cmd->add_option("--config", config_path, "Sweep configuration file")->required();
    sweep_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");

    std::string fig_validate;
    std::string fig_out;
    auto* fig3_cmd = app.add_subcommand("fig3", "Rate vs total cell power preset");
    auto* fig4_cmd = app.add_subcommand("fig4", "Per-active-user rate vs q preset");
    auto* fig5_cmd = app.add_subcommand("fig5", "Rate vs users per cell preset");
    auto* fig6_cmd = app.add_subcommand("fig6", "Rate vs interference factor preset");
    for (auto* cmd : {fig3_cmd, fig4_cmd, fig5_cmd, fig6_cmd}) {
        cmd->add_option("--validate", fig_validate, "Oracle cross-check: M,trials,seed");
        cmd->add_option("--out", fig_out, "Output CSV path (default: stdout)");
    }

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite");

    try {
        app.parse(argc, argv);

        if (rate_cmd->parsed()) return run_rate(rate_options);

        if (sweep_cmd->parsed()) {
            SweepSpec spec = parse_sweep_config_file(config_path);
            return emit_sweep(spec, out_path);
        }

        for (auto& [cmd, make_spec] :
             std::vector<std::pair<CLI::App*, SweepSpec (*)()>>{{fig3_cmd, fig3_spec},
                                                                 {fig4_cmd, fig4_spec},
                                                                 {fig5_cmd, fig5_spec},
                                                                 {fig6_cmd, fig6_spec}}) {
            if (cmd->parsed()) {
                SweepSpec spec = make_spec();
                spec.validate = parse_validate(fig_validate);
                return emit_sweep(spec, fig_out);
            }
        }

        if (selftest_cmd->parsed()) {
            return run_selftest(std::cout) == 0 ? kExitOk : kExitInvariantViolation;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
    return kExitConfigError;
}
