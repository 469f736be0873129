#include "cellrate/mcp_rate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cellrate/errors.hpp"

namespace cellrate {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr int kMaxIterations = 200;

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

// E[1/(1+s*g)] over the gain atoms.
double harmonic_mean_term(const VirtualGainDistribution& dist, double s) {
    return dist.expect([s](double g) { return 1.0 / (1.0 + s * g); });
}

// beta(nu) = E[g/(1+s*g)] / E[1/(1+s*g)] with s = gamma*nu. Cancellation-free
// form of (1/T - 1)/(gamma*nu); tends to the mean gain as nu -> 0.
double beta_of_nu(const VirtualGainDistribution& dist, double gamma, double nu) {
    const double s = gamma * nu;
    const double num = dist.expect([s](double g) { return g / (1.0 + s * g); });
    return num / harmonic_mean_term(dist, s);
}

}  // namespace

FixedPoint solve_fixed_point(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                             double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("solve_fixed_point: gamma must be finite and > 0");

    const auto outer_residual = [&](double nu) {
        return harmonic_mean_term(dist, gamma * nu) -
               resolvent_integral(profile, gamma * beta_of_nu(dist, gamma, nu));
    };

    // F is positive near nu = 0 and tends to P(A=0) - 1 < 0; expand the upper
    // end geometrically until the sign flips.
    double lo = 1e-12;
    double hi = 1.0;
    const double f_lo = outer_residual(lo);
    if (!(f_lo > 0.0))
        throw NoBracketError("solve_fixed_point: no sign change (degenerate gain distribution?)");
    double f_hi = outer_residual(hi);
    int expansions = 0;
    while (f_hi > 0.0) {
        if (++expansions > 60)
            throw NoBracketError("solve_fixed_point: bracket expansion exhausted");
        lo = hi;
        hi *= 10.0;
        f_hi = outer_residual(hi);
    }

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f_mid = outer_residual(mid);
        if (f_mid > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }

    FixedPoint fp{beta_of_nu(dist, gamma, mid), mid};
    const double t = harmonic_mean_term(dist, gamma * fp.nu);
    const double r1 = std::fabs(t - 1.0 / (1.0 + gamma * fp.beta * fp.nu));
    const double r2 = std::fabs(1.0 / (1.0 + gamma * fp.beta * fp.nu) -
                                resolvent_integral(profile, gamma * fp.beta));
    if (r1 > kResidualTol || r2 > kResidualTol)
        throw NoConvergenceError("solve_fixed_point: residuals above tolerance");
    return fp;
}

double mcp_rate_general(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                        double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("mcp_rate_general: gamma must be finite and >= 0");
    if (gamma == 0.0) return 0.0;
    if (dist.is_deterministic()) {
        const double g = dist.atoms().front().gain_sq;
        return g == 0.0 ? 0.0 : log_integral(profile, gamma * g);
    }
    if (dist.mean_gain() == 0.0) return 0.0;

    const FixedPoint fp = solve_fixed_point(profile, dist, gamma);
    const double fading_term =
        dist.expect([&](double g) { return log2_1p(gamma * fp.nu * g); });
    return log_integral(profile, gamma * fp.beta) + fading_term -
           log2_1p(gamma * fp.beta * fp.nu);
}

double solve_beta_erasure(const ChannelProfile& profile, double q_tilde, double gamma) {
    if (!(q_tilde > 0.0 && q_tilde < 1.0))
        throw std::invalid_argument("solve_beta_erasure: q_tilde must lie in (0,1)");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("solve_beta_erasure: gamma must be finite and > 0");

    // q_tilde/(1-beta) grows from q_tilde, the resolvent falls from 1; the
    // residual is monotone with exactly one sign change in [0, 1-q_tilde].
    const auto residual = [&](double beta) {
        return q_tilde / (1.0 - beta) - resolvent_integral(profile, gamma * beta);
    };

    double lo = 0.0;
    double hi = 1.0 - q_tilde;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

double mcp_rate_erasure(const ChannelProfile& profile, double q_tilde, double gamma) {
    if (!(q_tilde >= 0.0 && q_tilde <= 1.0))
        throw std::invalid_argument("mcp_rate_erasure: q_tilde must lie in [0,1]");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("mcp_rate_erasure: gamma must be finite and >= 0");
    if (q_tilde == 1.0 || gamma == 0.0) return 0.0;
    if (q_tilde == 0.0) return log_integral(profile, gamma);  // beta -> 1, d -> 0

    const double beta = solve_beta_erasure(profile, q_tilde, gamma);
    return log_integral(profile, gamma * beta) + relative_entropy_bernoulli(q_tilde, 1.0 - beta);
}

double relative_entropy_bernoulli(double q_tilde, double one_minus_beta) {
    if (!(q_tilde >= 0.0 && q_tilde <= 1.0))
        throw std::invalid_argument("relative_entropy_bernoulli: q_tilde must lie in [0,1]");
    if (!(one_minus_beta >= 0.0 && one_minus_beta <= 1.0))
        throw std::invalid_argument("relative_entropy_bernoulli: one_minus_beta must lie in [0,1]");

    const auto term = [](double p, double r) {
        if (p == 0.0) return 0.0;
        if (r == 0.0) return std::numeric_limits<double>::infinity();
        return p * std::log2(p / r);
    };
    const double beta = 1.0 - one_minus_beta;
    return term(1.0 - q_tilde, beta) + term(q_tilde, one_minus_beta);
}

double sho_apc_beta_closed_form(std::complex<double> alpha0, std::complex<double> alpha1, int K,
                                double q, double P) {
    if (K < 1) throw std::invalid_argument("sho_apc_beta_closed_form: K must be >= 1");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("sho_apc_beta_closed_form: q must lie in [0,1]");
    if (!(P > 0.0) || !std::isfinite(P))
        throw std::invalid_argument("sho_apc_beta_closed_form: P must be finite and > 0");

    const double s0 = std::norm(alpha0);
    const double s1 = std::norm(alpha1);
    const double qt = std::pow(q, K);
    const double qt2 = qt * qt;
    const double denom = qt2 * P * P * (s0 - s1) * (s0 - s1) - 1.0;
    if (std::fabs(denom) < 1e-14)
        throw DegenerateTapsError("sho_apc_beta_closed_form: vanishing denominator");

    const double radicand = 2.0 * P * (s0 + s1) + P * P * (s0 * s0 + s1 * s1) -
                            2.0 * P * P * s0 * s1 * (1.0 - 2.0 * qt2) + 1.0;
    return (qt * std::sqrt(radicand) - qt2 * P * (s0 + s1) - 1.0) / denom;
}

double sho_apc_rate(std::complex<double> alpha0, std::complex<double> alpha1, int K, double q,
                    double P) {
    if (K < 1) throw std::invalid_argument("sho_apc_rate: K must be >= 1");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("sho_apc_rate: q must lie in [0,1]");
    if (!(P >= 0.0) || !std::isfinite(P))
        throw std::invalid_argument("sho_apc_rate: P must be finite and >= 0");

    const ChannelProfile profile = ChannelProfile::sho(alpha0, alpha1);
    const double qt = std::pow(q, K);
    if (qt == 1.0 || P == 0.0) return 0.0;

    double beta;
    try {
        beta = sho_apc_beta_closed_form(alpha0, alpha1, K, q, P);
    } catch (const DegenerateTapsError&) {
        beta = solve_beta_erasure(profile, qt, P);
    }
    return log_integral(profile, P * beta) + relative_entropy_bernoulli(qt, 1.0 - beta);
}

}  // namespace cellrate
