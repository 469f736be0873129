#include "cellrate/mc_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cellrate/banded.hpp"
#include "cellrate/rng.hpp"

namespace cellrate {

namespace {

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

SimConfig::SimConfig(int M_, int trials_, std::uint64_t seed_) : M(M_), trials(trials_), seed(seed_) {
    if (M < 1) throw std::invalid_argument("SimConfig: M must be >= 1");
    if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
}

double throughput_log2_det(const ChannelProfile& profile, const std::vector<double>& gains) {
    const int l1 = profile.l1();
    const int l2 = profile.l2();
    const int m_cells = static_cast<int>(gains.size());
    if (m_cells < l1 + l2 + 1)
        throw std::invalid_argument("throughput_log2_det: need at least l1+l2+1 cells");

    // G = I + H D H^H truncates the Toeplitz band at the array edges, so
    // G(k+d,k) = delta_{d0} + sum_j alpha_{j-k-d} g_j conj(alpha_{j-k}) with
    // the sum over the j reaching both rows' taps.
    const int bandwidth = l1 + l2;
    BandedHermitianMatrix gram(m_cells, bandwidth);
    for (int k = 0; k < m_cells; ++k) {
        const int d_max = std::min(bandwidth, m_cells - 1 - k);
        for (int d = 0; d <= d_max; ++d) {
            const int i = k + d;
            std::complex<double> sum =
                d == 0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 0.0);
            const int j_lo = std::max(i - l1, 0);
            const int j_hi = std::min(k + l2, m_cells - 1);
            for (int j = j_lo; j <= j_hi; ++j)
                sum += profile.tap(j - i) * gains[static_cast<std::size_t>(j)] *
                       std::conj(profile.tap(j - k));
            gram.at(d, k) = sum;
        }
    }
    return gram.cholesky_log2_det() / m_cells;
}

double sample_throughput(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                         const SimConfig& cfg, int trial_index) {
    if (cfg.M < profile.l1() + profile.l2() + 1)
        throw std::invalid_argument("sample_throughput: M must be >= l1+l2+1");

    Xoshiro256 rng(cfg.seed, static_cast<std::uint64_t>(trial_index));
    std::vector<double> gains(static_cast<std::size_t>(cfg.M));
    for (auto& g : gains) g = draw_gain(dist, rng);
    return throughput_log2_det(profile, gains);
}

McEstimate estimate_throughput(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                               const SimConfig& cfg) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const double value = sample_throughput(profile, dist, cfg, t);
        sum += value;
        sum_sq += value * value;
    }
    const double n = static_cast<double>(cfg.trials);
    const double mean = sum / n;
    const double variance =
        cfg.trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(variance / n)};
}

}  // namespace cellrate
