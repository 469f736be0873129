#pragma once

#include <complex>

#include "cellrate/channel.hpp"
#include "cellrate/power_control.hpp"

namespace cellrate {

/// Auxiliary scalars coupling the fading expectation to the spectral
/// resolvent in the ISI-with-flat-fading rate formula. Both residuals of
///   E[1/(1+g*nu*|A|^2)] = 1/(1+g*beta*nu) = resolvent_integral(profile, g*beta)
/// are below the solver tolerance (1e-10) on return.
struct FixedPoint {
    double beta;
    double nu;
};

/// Solves the coupled fixed-point system for (beta, nu) at load gamma > 0.
///
/// The inner equality is eliminated in closed form,
///   beta(nu) = E[g/(1+gamma*nu*g)] / E[1/(1+gamma*nu*g)],
/// and the outer residual F(nu) = E[1/(1+gamma*nu*g)] -
/// resolvent_integral(profile, gamma*beta(nu)) is driven to zero by bracketed
/// bisection with geometric bracket expansion from [1e-12, 1].
///
/// Throws NoBracketError for degenerate distributions (no positive-gain mass)
/// and NoConvergenceError if residuals stay above tolerance.
FixedPoint solve_fixed_point(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                             double gamma);

/// Per-cell multicell-processing throughput, bits/s/Hz:
///   I = log_integral(gamma*beta) + E[log2(1+gamma*nu*|A|^2)] - log2(1+gamma*beta*nu).
/// The cellular convention is gamma = 1 with the distribution carrying the
/// power. Special cases: gamma = 0 or an all-silent distribution give 0; a
/// deterministic gain g gives the pure ISI capacity log_integral(gamma*g).
double mcp_rate_general(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                        double gamma);

/// Erasure specialization (gain in {0,1}, silence probability q_tilde):
/// unique beta in [0, 1-q_tilde] with q_tilde/(1-beta) =
/// resolvent_integral(profile, gamma*beta), by bisection to 1e-12.
/// Requires 0 < q_tilde < 1 and gamma > 0.
double solve_beta_erasure(const ChannelProfile& profile, double q_tilde, double gamma);

/// Erasure-channel throughput:
///   I = log_integral(gamma*beta) + d(q_tilde || 1-beta).
/// q_tilde = 0 reduces to the pure ISI capacity; q_tilde = 1 or gamma = 0
/// give 0.
double mcp_rate_erasure(const ChannelProfile& profile, double q_tilde, double gamma);

/// Relative entropy (bits) between Bernoulli(1-q_tilde) and Bernoulli(beta),
/// called with the *failure* probability of the second law:
///   d = (1-q_tilde)*log2((1-q_tilde)/beta) + q_tilde*log2(q_tilde/(1-beta)),
/// with beta = 1 - one_minus_beta and the 0*log(0/x) = 0 convention. Returns
/// +infinity when nonzero mass meets zero mass.
double relative_entropy_bernoulli(double q_tilde, double one_minus_beta);

/// Explicit beta for the soft-handoff model under APC (gamma = P, silence
/// q^K). Throws DegenerateTapsError when the denominator
/// q^{2K} P^2 (|a0|^2-|a1|^2)^2 - 1 vanishes within 1e-14; callers then use
/// solve_beta_erasure.
double sho_apc_beta_closed_form(std::complex<double> alpha0, std::complex<double> alpha1, int K,
                                double q, double P);

/// Fully closed-form soft-handoff APC rate; equals
/// mcp_rate_erasure(sho(a0,a1), q^K, P) up to solver tolerance.
double sho_apc_rate(std::complex<double> alpha0, std::complex<double> alpha1, int K, double q,
                    double P);

}  // namespace cellrate
