#pragma once

#include <cstdint>

#include "cellrate/channel.hpp"
#include "cellrate/power_control.hpp"

namespace cellrate {

/// Monte Carlo estimate: sample mean and standard error of the mean.
struct McEstimate {
    double mean;
    double std_error;
};

/// Single-cell-processing throughput E[log2(1 + SINR)] by exact enumeration
/// over the joint law of one independent gain per tap position:
///   SINR = |alpha_0|^2 g_0 / (1 + sum_{l != 0} |alpha_l|^2 g_l).
/// Throws SupportTooLargeError when the product support exceeds 1e7 terms;
/// callers then switch to scp_rate_mc.
double scp_rate_exact(const ChannelProfile& profile, const VirtualGainDistribution& dist);

/// Monte Carlo version of the same expectation: i.i.d. gain draws per tap
/// position; deterministic for a fixed seed.
McEstimate scp_rate_mc(const ChannelProfile& profile, const VirtualGainDistribution& dist,
                       std::uint64_t samples, std::uint64_t seed);

}  // namespace cellrate
