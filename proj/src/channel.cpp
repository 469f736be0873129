#include "cellrate/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "cellrate/quadrature.hpp"

namespace cellrate {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

}  // namespace

ChannelProfile::ChannelProfile(int l1, int l2, std::vector<std::complex<double>> taps)
    : l1_(l1), l2_(l2), taps_(std::move(taps)) {
    if (l1_ < 0 || l2_ < 0) throw std::invalid_argument("ChannelProfile: l1, l2 must be >= 0");
    if (static_cast<int>(taps_.size()) != l1_ + l2_ + 1)
        throw std::invalid_argument("ChannelProfile: need exactly l1+l2+1 taps");
    bool any_nonzero = false;
    for (const auto& t : taps_) {
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
            throw std::invalid_argument("ChannelProfile: taps must be finite");
        if (std::abs(t) > 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw std::invalid_argument("ChannelProfile: all taps are zero");
}

ChannelProfile ChannelProfile::sho(std::complex<double> alpha0, std::complex<double> alpha1) {
    return ChannelProfile(0, 1, {alpha0, alpha1});
}

std::complex<double> ChannelProfile::tap(int l) const {
    if (l < -l1_ || l > l2_) throw std::invalid_argument("ChannelProfile::tap: offset out of range");
    return taps_[static_cast<std::size_t>(l + l1_)];
}

bool ChannelProfile::is_sho() const {
    return (l1_ == 0 && l2_ == 1) || (l1_ == 1 && l2_ == 0);
}

double ChannelProfile::total_tap_power() const {
    double sum = 0.0;
    for (const auto& t : taps_) sum += std::norm(t);
    return sum;
}

double ChannelProfile::sho_s0() const {
    if (!is_sho()) throw std::invalid_argument("sho_s0: not a soft-handoff profile");
    return std::norm(tap(0));
}

double ChannelProfile::sho_s1() const {
    if (!is_sho()) throw std::invalid_argument("sho_s1: not a soft-handoff profile");
    return std::norm(l2_ == 1 ? tap(1) : tap(-1));
}

double psd(const ChannelProfile& profile, double f) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("psd: f must lie in [0,1]");
    std::complex<double> h(0.0, 0.0);
    for (int l = -profile.l1(); l <= profile.l2(); ++l) {
        const double phase = -kTwoPi * l * f;
        h += profile.tap(l) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::norm(h);
}

namespace {

// a^2 - b^2 for the SHO closed forms; equals 1 + 2x(s0+s1) + x^2 (s0-s1)^2,
// which avoids the cancellation in the literal difference and is positive for
// every x >= 0.
double sho_a2_minus_b2(double s0, double s1, double x) {
    const double d = s0 - s1;
    return 1.0 + 2.0 * x * (s0 + s1) + x * x * d * d;
}

}  // namespace

double log_integral(const ChannelProfile& profile, double x) {
    if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("log_integral: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    if (profile.num_taps() == 1) return log2_1p(x * profile.total_tap_power());
    if (profile.is_sho()) {
        const double a = 1.0 + x * (profile.sho_s0() + profile.sho_s1());
        const double r = std::sqrt(sho_a2_minus_b2(profile.sho_s0(), profile.sho_s1(), x));
        return std::log2(0.5 * (a + r));
    }
    return integrate01([&](double f) { return log2_1p(x * psd(profile, f)); });
}

double resolvent_integral(const ChannelProfile& profile, double x) {
    if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("resolvent_integral: x must be finite and >= 0");
    if (x == 0.0) return 1.0;
    if (profile.num_taps() == 1) return 1.0 / (1.0 + x * profile.total_tap_power());
    if (profile.is_sho())
        return 1.0 / std::sqrt(sho_a2_minus_b2(profile.sho_s0(), profile.sho_s1(), x));
    return integrate01([&](double f) { return 1.0 / (1.0 + x * psd(profile, f)); });
}

}  // namespace cellrate
