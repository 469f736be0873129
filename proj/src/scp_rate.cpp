#include "cellrate/scp_rate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cellrate/errors.hpp"
#include "cellrate/rng.hpp"

namespace cellrate {

namespace {

constexpr double kEnumerationCap = 1e7;

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

double sinr(double s_own, double own_gain, double interference) {
    return s_own * own_gain / (1.0 + interference);
}

// Squared tap magnitudes with the own-cell tap first.
struct TapPowers {
    double own;
    std::vector<double> interferers;
};

TapPowers tap_powers(const ChannelProfile& profile) {
    TapPowers powers;
    powers.own = std::norm(profile.tap(0));
    for (int l = -profile.l1(); l <= profile.l2(); ++l) {
        if (l != 0) powers.interferers.push_back(std::norm(profile.tap(l)));
    }
    return powers;
}

// Draw one gain by inverse CDF over the atoms.
double draw_gain(const VirtualGainDistribution& dist, Xoshiro256& rng) {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (const auto& atom : dist.atoms()) {
        cum += atom.prob;
        if (u < cum) return atom.gain_sq;
    }
    return dist.atoms().back().gain_sq;
}

}  // namespace

double scp_rate_exact(const ChannelProfile& profile, const VirtualGainDistribution& dist) {
    const TapPowers powers = tap_powers(profile);
    const auto& atoms = dist.atoms();
    const std::size_t n_positions = powers.interferers.size() + 1;

    double terms = 1.0;
    for (std::size_t i = 0; i < n_positions; ++i) terms *= static_cast<double>(atoms.size());
    if (terms > kEnumerationCap)
        throw SupportTooLargeError("scp_rate_exact: product support exceeds the enumeration cap");

    // Odometer over one atom index per interferer position; the own-cell gain
    // is folded in analytically per interference state.
    std::vector<std::size_t> index(powers.interferers.size(), 0);
    double rate = 0.0;
    while (true) {
        double interference = 0.0;
        double prob = 1.0;
        for (std::size_t i = 0; i < index.size(); ++i) {
            interference += powers.interferers[i] * atoms[index[i]].gain_sq;
            prob *= atoms[index[i]].prob;
        }
        for (const auto& own : atoms)
            rate += prob * own.prob * log2_1p(sinr(powers.own, own.gain_sq, interference));

        std::size_t pos = 0;
        for (; pos < index.size(); ++pos) {
            if (++index[pos] < atoms.size()) break;
            index[pos] = 0;
        }
        if (pos == index.size()) break;
    }
    return rate;
}

McEstimate scp_rate_mc(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                       std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("scp_rate_mc: samples must be >= 1");
    const TapPowers powers = tap_powers(profile);

    Xoshiro256 rng(seed, 0);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double interference = 0.0;
        for (const double s_l : powers.interferers) interference += s_l * draw_gain(dist, rng);
        const double value = log2_1p(sinr(powers.own, draw_gain(dist, rng), interference));
        sum += value;
        sum_sq += value * value;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double variance = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(variance / n)};
}

}  // namespace cellrate
