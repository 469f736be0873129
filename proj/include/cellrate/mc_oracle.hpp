#pragma once

#include <cstdint>
#include <vector>

#include "cellrate/channel.hpp"
#include "cellrate/power_control.hpp"
#include "cellrate/scp_rate.hpp"

namespace cellrate {

/// (1/M) log2 det(I + H diag(gains) H^H) for explicit per-cell squared
/// gains, with [H]_{i,j} = alpha_{j-i} truncated at the array edges. The Gram
/// matrix has bandwidth l1+l2 and is factored by a banded Cholesky; requires
/// gains.size() >= l1+l2+1.
double throughput_log2_det(const ChannelProfile& profile, const std::vector<double>& gains);

/// Finite-size simulation setup: M cells, independent trials, base seed.
struct SimConfig {
    int M;
    int trials;
    std::uint64_t seed;

    SimConfig(int M_, int trials_, std::uint64_t seed_);
};

/// One finite-M throughput draw: (1/M) log2 det(I + H D H^H) with
/// [H]_{i,j} = alpha_{j-i} (indices outside 1..M dropped, no wraparound) and
/// D the diagonal of i.i.d. squared virtual gains from `dist`. The Gram
/// matrix has bandwidth l1+l2 and is factored by a banded Cholesky, so a
/// trial costs O(M (l1+l2)^2). The RNG substream depends only on
/// (cfg.seed, trial_index).
double sample_throughput(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                         const SimConfig& cfg, int trial_index);

/// Mean and standard error over cfg.trials independent draws; deterministic
/// for a fixed seed and independent of evaluation order.
McEstimate estimate_throughput(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                               const SimConfig& cfg);

}  // namespace cellrate
