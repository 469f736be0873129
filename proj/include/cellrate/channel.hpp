#pragma once

#include <complex>
#include <vector>

namespace cellrate {

/// Equivalent two-sided ISI filter induced by the inter-cell path gains.
///
/// A profile holds the taps alpha_l for l = -l1..l2: a terminal's signal is
/// received by its own base station (l = 0), by l1 stations on one side and
/// l2 on the other. The filter response is H(f) = sum_l alpha_l e^{-j2*pi*l*f}
/// and all rate formulas consume the taps only through S(f) = |H(f)|^2.
class ChannelProfile {
  public:
    ChannelProfile(int l1, int l2, std::vector<std::complex<double>> taps);

    // Two-tap soft-handoff convenience: taps (alpha0, alpha1) at l = 0, 1.
    static ChannelProfile sho(std::complex<double> alpha0, std::complex<double> alpha1);

    int l1() const { return l1_; }
    int l2() const { return l2_; }
    int num_taps() const { return static_cast<int>(taps_.size()); }

    // Tap at offset l in [-l1, l2].
    std::complex<double> tap(int l) const;
    const std::vector<std::complex<double>>& taps() const { return taps_; }

    // Interference comes from exactly one adjacent cell.
    bool is_sho() const;

    // sum_l |alpha_l|^2 (the PSD integral, by Parseval).
    double total_tap_power() const;

    // Squared magnitudes of the own-cell and neighbour tap; SHO profiles only.
    double sho_s0() const;
    double sho_s1() const;

  private:
    int l1_;
    int l2_;
    std::vector<std::complex<double>> taps_;
};

/// S(f) = |sum_l alpha_l e^{-j*2*pi*l*f}|^2 for f in [0,1].
double psd(const ChannelProfile& profile, double f);

/// integral_0^1 log2(1 + x*S(f)) df, in bits. Closed form for SHO profiles:
/// log2((a+sqrt(a^2-b^2))/2) with a = 1+x(s0+s1), b = 2x*sqrt(s0*s1);
/// composite Gauss-Legendre quadrature otherwise.
double log_integral(const ChannelProfile& profile, double x);

/// integral_0^1 1/(1 + x*S(f)) df, in (0,1]. Closed form 1/sqrt(a^2-b^2) for
/// SHO profiles, quadrature otherwise.
double resolvent_integral(const ChannelProfile& profile, double x);

}  // namespace cellrate
