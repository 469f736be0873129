#include <doctest.h>

#include <cmath>

#include "cellrate/errors.hpp"
#include "cellrate/mcp_rate.hpp"
#include "cellrate/scp_rate.hpp"

using namespace cellrate;

namespace {

using Atom = VirtualGainDistribution::Atom;

constexpr double kGamma5dB = 3.1622776601683795;
constexpr double kNoInterferenceRate = 1.1094737505048093;  // 0.7*log2(3)
constexpr double kFourCaseRate = 0.46199922663873750;       // 0.25 + 0.25*log2(1.8)
constexpr double kDeterministicRate = 0.84799690655495002;  // log2(1 + 1/1.25)

}  // namespace

TEST_CASE("scp exact: no interference leaves a scaled capacity") {
    const ChannelProfile flat = ChannelProfile::sho(1.0, 0.0);
    const VirtualGainDistribution dist({Atom{0.0, 0.3}, Atom{2.0, 0.7}});
    CHECK(std::fabs(scp_rate_exact(flat, dist) - kNoInterferenceRate) < 1e-13);
}

TEST_CASE("scp exact: four-case enumeration") {
    const ChannelProfile half = ChannelProfile::sho(1.0, 0.5);
    const VirtualGainDistribution dist({Atom{0.0, 0.5}, Atom{1.0, 0.5}});
    CHECK(std::fabs(scp_rate_exact(half, dist) - kFourCaseRate) < 1e-13);
}

TEST_CASE("scp exact: deterministic gains") {
    const ChannelProfile half = ChannelProfile::sho(1.0, 0.5);
    const VirtualGainDistribution dist({Atom{1.0, 1.0}});
    CHECK(std::fabs(scp_rate_exact(half, dist) - kDeterministicRate) < 1e-13);
}

TEST_CASE("scp exact: support cap raises") {
    const ChannelProfile wide(2, 2, {{0.2, 0.0}, {0.4, 0.0}, {1.0, 0.0}, {0.4, 0.0}, {0.2, 0.0}});
    const auto big = npc_distribution(ActivityModel(100, 0.3, 1.0));  // 101^5 > 1e7
    CHECK_THROWS_AS(scp_rate_exact(wide, big), SupportTooLargeError);
}

TEST_CASE("scp exact: invariant under permuting equal-magnitude interferer taps") {
    const ChannelProfile forward(1, 1, {{0.3, 0.0}, {1.0, 0.0}, {0.8, 0.0}});
    const ChannelProfile swapped(1, 1, {{0.8, 0.0}, {1.0, 0.0}, {0.3, 0.0}});
    const auto dist = npc_distribution(ActivityModel(3, 0.4, 2.0));
    CHECK(std::fabs(scp_rate_exact(forward, dist) - scp_rate_exact(swapped, dist)) < 1e-13);
}

TEST_CASE("scp mc: agrees with enumeration within three standard errors") {
    const ChannelProfile half = ChannelProfile::sho(1.0, 0.5);
    const VirtualGainDistribution dist({Atom{0.0, 0.5}, Atom{1.0, 0.5}});
    const McEstimate estimate = scp_rate_mc(half, dist, 100000, 0xfeed01);
    CHECK(std::fabs(estimate.mean - kFourCaseRate) <= 3.0 * estimate.std_error);
    CHECK(estimate.std_error > 0.0);
}

TEST_CASE("scp mc: degenerate inputs") {
    const ChannelProfile half = ChannelProfile::sho(1.0, 0.5);
    const VirtualGainDistribution fixed({Atom{1.0, 1.0}});
    const McEstimate deterministic = scp_rate_mc(half, fixed, 1000, 7);
    CHECK(deterministic.mean == doctest::Approx(kDeterministicRate).epsilon(1e-14));
    CHECK(deterministic.std_error == 0.0);

    const VirtualGainDistribution silent({Atom{0.0, 1.0}});
    const McEstimate nothing = scp_rate_mc(half, silent, 1000, 7);
    CHECK(nothing.mean == 0.0);
    CHECK(nothing.std_error == 0.0);
}

TEST_CASE("scp mc: deterministic for a fixed seed") {
    const ChannelProfile half = ChannelProfile::sho(1.0, 0.5);
    const auto dist = apc_distribution(ActivityModel(5, 0.3, kGamma5dB));
    const McEstimate a = scp_rate_mc(half, dist, 20000, 42);
    const McEstimate b = scp_rate_mc(half, dist, 20000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const McEstimate c = scp_rate_mc(half, dist, 20000, 43);
    CHECK(a.mean != c.mean);
}

TEST_CASE("scp saturates with power when an interferer tap exists") {
    const ChannelProfile half = ChannelProfile::sho(1.0, 0.5);
    for (auto make : {npc_distribution, apc_distribution}) {
        const double low = scp_rate_exact(half, make(ActivityModel(12, 0.3, 1e4)));
        const double high = scp_rate_exact(half, make(ActivityModel(12, 0.3, 1e6)));
        CHECK(high - low < 1e-2);
        CHECK(high >= low - 1e-12);
    }
}

TEST_CASE("scp decreases with the interference factor") {
    double previous = 1e9;
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const ChannelProfile profile = ChannelProfile::sho(1.0, alpha);
        const double rate = scp_rate_exact(profile, apc_distribution(ActivityModel(5, 0.3, kGamma5dB)));
        CHECK(rate <= previous + 1e-12);
        previous = rate;
    }
}

TEST_CASE("mcp dominates scp pointwise") {
    for (double alpha : {0.25, 0.5, 0.9}) {
        const ChannelProfile profile = ChannelProfile::sho(1.0, alpha);
        for (double P : {1.0, kGamma5dB, 31.6227766016838}) {
            for (auto make : {npc_distribution, apc_distribution, cpc_distribution}) {
                const auto dist = make(ActivityModel(5, 0.3, P));
                CHECK(mcp_rate_general(profile, dist, 1.0) >=
                      scp_rate_exact(profile, dist) - 1e-9);
            }
        }
    }
}
