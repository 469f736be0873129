#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cellrate/errors.hpp"
#include "cellrate/mcp_rate.hpp"
#include "cellrate/quadrature.hpp"
#include "cellrate/rng.hpp"
#include "cellrate/scp_rate.hpp"
#include "cellrate/sweep.hpp"

namespace cellrate {

namespace {

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::string describe(double got, double want) {
    return "got " + std::to_string(got) + ", want " + std::to_string(want);
}

bool check_sho_closed_forms(std::string& detail) {
    Xoshiro256 rng(0xc0ffee, 0);
    for (int i = 0; i < 20; ++i) {
        const std::complex<double> a0(0.2 + rng.uniform01(), rng.uniform01() - 0.5);
        const std::complex<double> a1(rng.uniform01(), rng.uniform01() - 0.5);
        const ChannelProfile profile = ChannelProfile::sho(a0, a1);
        const double x = 40.0 * rng.uniform01();
        const double li_closed = log_integral(profile, x);
        const double li_quad =
            integrate01([&](double f) { return std::log1p(x * psd(profile, f)) / M_LN2; });
        const double ri_closed = resolvent_integral(profile, x);
        const double ri_quad = integrate01([&](double f) { return 1.0 / (1.0 + x * psd(profile, f)); });
        if (!near(li_closed, li_quad, 1e-10) || !near(ri_closed, ri_quad, 1e-10)) {
            detail = "closed form vs quadrature mismatch at sample " + std::to_string(i);
            return false;
        }
    }
    return true;
}

bool check_parseval(std::string& detail) {
    const ChannelProfile profile(1, 2, {{0.4, 0.1}, {1.0, 0.0}, {0.6, -0.2}, {0.3, 0.0}});
    const double integral = integrate01([&](double f) { return psd(profile, f); });
    if (!near(integral, profile.total_tap_power(), 1e-10)) {
        detail = describe(integral, profile.total_tap_power());
        return false;
    }
    return true;
}

bool check_moments(std::string& detail) {
    for (int K = 1; K <= 12; ++K) {
        for (double q : {0.05, 0.3, 0.7, 0.95}) {
            for (double P : {0.5, 3.1622776601683795, 20.0}) {
                const ActivityModel model(K, q, P);
                const double qk = std::pow(q, K);
                if (!near(mean_gain(npc_distribution(model)), P * (1.0 - q), 1e-12) ||
                    !near(mean_gain(apc_distribution(model)), P * (1.0 - qk), 1e-12) ||
                    !near(mean_gain(cpc_distribution(model)),
                          P * (1.0 + K * q - (K + 1.0) * qk), 1e-12)) {
                    detail = "mean mismatch at K=" + std::to_string(K);
                    return false;
                }
            }
        }
    }
    const double v5 = npc_distribution(ActivityModel(5, 0.3, 1.0)).variance_gain();
    const double v20 = npc_distribution(ActivityModel(20, 0.3, 1.0)).variance_gain();
    const double v200 = npc_distribution(ActivityModel(200, 0.3, 1.0)).variance_gain();
    if (!(v200 < v20 && v20 < v5)) {
        detail = "virtual fading variance fails to consolidate with K";
        return false;
    }
    return true;
}

bool check_erasure_general_consistency(std::string& detail) {
    for (double alpha1 : {0.25, 0.7}) {
        const ChannelProfile profile = ChannelProfile::sho(1.0, alpha1);
        for (double qt : {0.05, 0.4, 0.8}) {
            for (double P : {0.8, 3.1622776601683795, 31.62}) {
                const double erasure = mcp_rate_erasure(profile, qt, P);
                const VirtualGainDistribution power_in_dist({{0.0, qt}, {P, 1.0 - qt}});
                const VirtualGainDistribution unit_gain({{0.0, qt}, {1.0, 1.0 - qt}});
                const double general1 = mcp_rate_general(profile, power_in_dist, 1.0);
                const double general2 = mcp_rate_general(profile, unit_gain, P);
                if (!near(erasure, general1, 1e-8) || !near(erasure, general2, 1e-8)) {
                    detail = "erasure vs general mismatch at alpha1=" + std::to_string(alpha1);
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_beta_closed_form(std::string& detail) {
    for (double alpha1 : {0.3, 0.6, 1.0}) {
        for (int K : {1, 4, 9}) {
            for (double q : {0.15, 0.5, 0.85}) {
                for (double P : {0.7, 3.1622776601683795, 15.0}) {
                    const ChannelProfile profile = ChannelProfile::sho(1.0, alpha1);
                    const double qt = std::pow(q, K);
                    double closed;
                    try {
                        closed = sho_apc_beta_closed_form(1.0, alpha1, K, q, P);
                    } catch (const Error&) {
                        continue;  // degenerate denominator falls back elsewhere
                    }
                    const double bisected = solve_beta_erasure(profile, qt, P);
                    if (!near(closed, bisected, 1e-9)) {
                        detail = "beta mismatch: " + describe(closed, bisected);
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool check_flat_spectrum_reduction(std::string& detail) {
    const ChannelProfile flat = ChannelProfile::sho(1.0, 0.0);
    for (int K : {1, 5}) {
        for (double q : {0.1, 0.3, 0.8}) {
            for (double P : {1.0, 3.1622776601683795, 50.0}) {
                const double qt = std::pow(q, K);
                const double expected = (1.0 - qt) * std::log2(1.0 + P);
                const double rate = mcp_rate_erasure(flat, qt, P);
                if (!near(rate, expected, 1e-9)) {
                    detail = describe(rate, expected);
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_relative_entropy(std::string& detail) {
    if (relative_entropy_bernoulli(0.3, 0.3) != 0.0) {
        detail = "matched laws produced nonzero divergence";
        return false;
    }
    if (relative_entropy_bernoulli(0.0, 0.0) != 0.0) {
        detail = "coinciding point masses produced nonzero divergence";
        return false;
    }
    if (!std::isinf(relative_entropy_bernoulli(0.3, 1.0))) {
        detail = "expected +inf when nonzero mass meets zero mass";
        return false;
    }
    return true;
}

bool check_scp_exact_vs_mc(std::string& detail) {
    const ChannelProfile profile = ChannelProfile::sho(1.0, 0.5);
    const VirtualGainDistribution dist =
        npc_distribution(ActivityModel(4, 0.35, 3.1622776601683795));
    const double exact = scp_rate_exact(profile, dist);
    const McEstimate mc = scp_rate_mc(profile, dist, 100000, 0x715EED);
    if (std::fabs(mc.mean - exact) > 3.0 * mc.std_error) {
        detail = describe(mc.mean, exact) + " with stderr " + std::to_string(mc.std_error);
        return false;
    }
    return true;
}

bool check_oracle_agreement(std::string& detail) {
    const ChannelProfile profile = ChannelProfile::sho(1.0, 0.5);
    const double P = 3.1622776601683795;
    const VirtualGainDistribution dist = apc_distribution(ActivityModel(5, 0.3, P));
    const double analytic = mcp_rate_general(profile, dist, 1.0);
    const McEstimate estimate = estimate_throughput(profile, dist, SimConfig(200, 20, 0xacce5501));
    const double tolerance = std::max(3.0 * estimate.std_error, 0.02 * std::fabs(analytic));
    if (std::fabs(estimate.mean - analytic) > tolerance) {
        detail = describe(estimate.mean, analytic);
        return false;
    }
    return true;
}

bool check_sweep_orderings(std::string& detail) {
    SweepSpec spec = fig6_spec();
    spec.grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    const SweepResult result = run_sweep(spec);
    const auto violations = ordering_violations(result);
    if (!violations.empty()) {
        detail = violations.front();
        return false;
    }
    for (const auto& row : result.rows) {
        if (row.sweep_value != 0.0 || row.processing != Processing::MCP) continue;
        for (const auto& other : result.rows) {
            if (other.sweep_value == 0.0 && other.scheme == row.scheme &&
                other.processing == Processing::SCP &&
                std::fabs(row.rate_bits - other.rate_bits) > 1e-9) {
                detail = "mcp and scp fail to coincide without interference";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int run_selftest(std::ostream& out) {
    const std::vector<Check> checks = {
        {"soft-handoff closed forms match quadrature", check_sho_closed_forms},
        {"psd integrates to the total tap power", check_parseval},
        {"scheme moment identities hold", check_moments},
        {"erasure and general rates agree", check_erasure_general_consistency},
        {"explicit beta matches bisection", check_beta_closed_form},
        {"flat spectrum reduces to the memoryless rate", check_flat_spectrum_reduction},
        {"bernoulli relative entropy edge cases", check_relative_entropy},
        {"scp enumeration matches monte carlo", check_scp_exact_vs_mc},
        {"log-det oracle matches the analytic rate", check_oracle_agreement},
        {"sweep ordering invariants hold", check_sweep_orderings},
    };

    int failures = 0;
    for (const auto& check : checks) {
        std::string detail;
        bool passed = false;
        try {
            passed = check.run(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        out << (passed ? "ok   " : "FAIL ") << check.name;
        if (!passed && !detail.empty()) out << ": " << detail;
        out << '\n';
        if (!passed) ++failures;
    }
    return failures;
}

}  // namespace cellrate
