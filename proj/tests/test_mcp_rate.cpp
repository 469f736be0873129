#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cellrate/errors.hpp"
#include "cellrate/mcp_rate.hpp"

using namespace cellrate;

namespace {

using Atom = VirtualGainDistribution::Atom;

constexpr double kGamma5dB = 3.1622776601683795;   // 10^(5/10)
constexpr double kBetaFlat = 0.35921691364640340;  // (1-0.3)/(1+0.3*10^0.5)
constexpr double kFlatApcRate = 1.4401612460247565;
// d(0.3 || 1-0.359225), two-term evaluation at 30 digits
constexpr double kKlAtSpecBeta = 0.34527040732553194;
constexpr double kShoApcBeta5dB = 0.99079327873534695;   // (1,0.5), K=5, q=0.3
constexpr double kShoApcRate5dB = 2.1270224610266591;

const ChannelProfile kFlat = ChannelProfile::sho(1.0, 0.0);
const ChannelProfile kHalf = ChannelProfile::sho(1.0, 0.5);

}  // namespace

TEST_CASE("fixed point: deterministic fading pins beta to the gain") {
    for (double g : {0.4, 1.0, 6.0}) {
        const VirtualGainDistribution dist({Atom{g, 1.0}});
        for (const auto& profile : {kFlat, kHalf}) {
            const FixedPoint fp = solve_fixed_point(profile, dist, 2.0);
            CHECK(std::fabs(fp.beta - g) < 1e-12);
        }
    }
}

TEST_CASE("fixed point: flat-spectrum bernoulli matches the closed form") {
    const VirtualGainDistribution dist({Atom{0.0, 0.3}, Atom{1.0, 0.7}});
    const FixedPoint fp = solve_fixed_point(kFlat, dist, kGamma5dB);
    CHECK(std::fabs(fp.beta - kBetaFlat) < 1e-10);
}

TEST_CASE("fixed point: residuals satisfy both equalities") {
    const VirtualGainDistribution dist({Atom{0.0, 0.2}, Atom{0.7, 0.5}, Atom{2.0, 0.3}});
    const double gamma = 4.0;
    const FixedPoint fp = solve_fixed_point(kHalf, dist, gamma);
    const double expectation =
        dist.expect([&](double g) { return 1.0 / (1.0 + gamma * fp.nu * g); });
    CHECK(std::fabs(expectation - 1.0 / (1.0 + gamma * fp.beta * fp.nu)) < 1e-10);
    CHECK(std::fabs(expectation - resolvent_integral(kHalf, gamma * fp.beta)) < 1e-10);
}

TEST_CASE("fixed point: silent system has no bracket") {
    const VirtualGainDistribution silent({Atom{0.0, 1.0}});
    CHECK_THROWS_AS(solve_fixed_point(kHalf, silent, 2.0), NoBracketError);
    CHECK_THROWS_AS(solve_fixed_point(kHalf, silent, kGamma5dB), NoBracketError);
}

TEST_CASE("mcp general rate: special cases") {
    const VirtualGainDistribution dist({Atom{0.0, 0.3}, Atom{1.0, 0.7}});
    CHECK(mcp_rate_general(kHalf, dist, 0.0) == 0.0);

    const VirtualGainDistribution silent({Atom{0.0, 1.0}});
    CHECK(mcp_rate_general(kHalf, silent, 5.0) == 0.0);

    for (double g : {0.5, 2.0}) {
        const VirtualGainDistribution fixed({Atom{g, 1.0}});
        CHECK(mcp_rate_general(kHalf, fixed, 3.0) ==
              doctest::Approx(log_integral(kHalf, 3.0 * g)).epsilon(1e-14));
    }
}

TEST_CASE("mcp general rate: flat spectrum reduces to the memoryless channel") {
    const VirtualGainDistribution dist({Atom{0.0, 0.3}, Atom{1.0, 0.7}});
    const double rate = mcp_rate_general(kFlat, dist, kGamma5dB);
    CHECK(std::fabs(rate - kFlatApcRate) < 1e-10);
    // the spec quotes 1.44025 at reduced precision
    CHECK(std::fabs(rate - 1.44025) < 2e-4);
}

TEST_CASE("mcp general rate: monotone in gamma and under gain domination") {
    const VirtualGainDistribution dist({Atom{0.0, 0.25}, Atom{0.8, 0.5}, Atom{1.5, 0.25}});
    double previous = -1.0;
    for (double gamma : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double rate = mcp_rate_general(kHalf, dist, gamma);
        CHECK(rate >= previous - 1e-12);
        previous = rate;
    }

    const VirtualGainDistribution dominated({Atom{0.0, 0.25}, Atom{0.4, 0.5}, Atom{0.75, 0.25}});
    CHECK(mcp_rate_general(kHalf, dominated, 2.0) <= mcp_rate_general(kHalf, dist, 2.0) + 1e-12);
}

TEST_CASE("erasure beta: flat closed form and limits") {
    CHECK(std::fabs(solve_beta_erasure(kFlat, 0.3, kGamma5dB) - kBetaFlat) < 1e-11);
    // the spec quotes 0.359225 at reduced precision
    CHECK(std::fabs(solve_beta_erasure(kFlat, 0.3, kGamma5dB) - 0.359225) < 1e-4);

    // gamma -> 0 pushes beta to 1 - q_tilde
    CHECK(std::fabs(solve_beta_erasure(kHalf, 0.3, 1e-9) - 0.7) < 1e-6);

    CHECK_THROWS_AS(solve_beta_erasure(kHalf, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_beta_erasure(kHalf, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_beta_erasure(kHalf, 0.3, 0.0), std::invalid_argument);
}

TEST_CASE("erasure beta: residual changes sign exactly once across the bracket") {
    const double q_tilde = 0.3;
    const double gamma = kGamma5dB;
    int sign_changes = 0;
    double previous = q_tilde - 1.0;  // residual at beta = 0
    for (int i = 1; i <= 100; ++i) {
        const double beta = (1.0 - q_tilde) * i / 100.0;
        const double residual =
            q_tilde / (1.0 - beta) - resolvent_integral(kHalf, gamma * beta);
        if ((residual > 0.0) != (previous > 0.0)) ++sign_changes;
        previous = residual;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("erasure rate: examples and edges") {
    CHECK(std::fabs(mcp_rate_erasure(kHalf, 0.0, 1.0) - log_integral(kHalf, 1.0)) == 0.0);
    CHECK(std::fabs(mcp_rate_erasure(kHalf, 0.0, 1.0) - 1.0927366575317556) < 1e-13);
    CHECK(std::fabs(mcp_rate_erasure(kFlat, 0.3, kGamma5dB) - kFlatApcRate) < 1e-11);
    CHECK(mcp_rate_erasure(kHalf, 1.0, 3.0) == 0.0);
    CHECK(mcp_rate_erasure(kHalf, 0.4, 0.0) == 0.0);
}

TEST_CASE("erasure and general formulations agree in both power conventions") {
    for (double alpha1 : {0.25, 0.6, 0.9}) {
        const ChannelProfile profile = ChannelProfile::sho(1.0, alpha1);
        for (double q_tilde : {0.05, 0.3, 0.7}) {
            for (double P : {0.7, kGamma5dB, 25.0}) {
                const double erasure = mcp_rate_erasure(profile, q_tilde, P);
                const double power_in_gain = mcp_rate_general(
                    profile, VirtualGainDistribution({Atom{0.0, q_tilde}, Atom{P, 1.0 - q_tilde}}),
                    1.0);
                const double power_in_gamma = mcp_rate_general(
                    profile, VirtualGainDistribution({Atom{0.0, q_tilde}, Atom{1.0, 1.0 - q_tilde}}),
                    P);
                CHECK(std::fabs(erasure - power_in_gain) < 1e-8);
                CHECK(std::fabs(erasure - power_in_gamma) < 1e-8);
            }
        }
    }
}

TEST_CASE("bernoulli relative entropy") {
    CHECK(relative_entropy_bernoulli(0.3, 0.3) == 0.0);       // matched laws
    CHECK(relative_entropy_bernoulli(0.0, 0.0) == 0.0);       // coinciding point masses
    CHECK(relative_entropy_bernoulli(1.0, 1.0) == 0.0);
    CHECK(std::isinf(relative_entropy_bernoulli(0.3, 1.0)));  // beta = 0 under mass
    CHECK(std::isinf(relative_entropy_bernoulli(0.5, 0.0)));  // 1-beta = 0 under mass

    CHECK(std::fabs(relative_entropy_bernoulli(0.3, 1.0 - 0.359225) - kKlAtSpecBeta) < 1e-13);
    // the spec quotes 0.345317 at reduced precision
    CHECK(std::fabs(relative_entropy_bernoulli(0.3, 1.0 - 0.359225) - 0.345317) < 1e-4);

    CHECK_THROWS_AS(relative_entropy_bernoulli(-0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(relative_entropy_bernoulli(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("explicit sho/apc beta") {
    CHECK(std::fabs(sho_apc_beta_closed_form(1.0, 0.5, 5, 0.3, kGamma5dB) - kShoApcBeta5dB) <
          1e-12);
    CHECK(std::fabs(sho_apc_beta_closed_form(1.0, 0.5, 5, 0.3, kGamma5dB) -
                    solve_beta_erasure(kHalf, std::pow(0.3, 5), kGamma5dB)) < 1e-9);

    // flat spectrum reduces to (1-q)/(1+qP)
    CHECK(std::fabs(sho_apc_beta_closed_form(1.0, 0.0, 1, 0.3, kGamma5dB) - kBetaFlat) < 1e-13);

    // equal taps keep the denominator at -1
    const ChannelProfile equal_taps = ChannelProfile::sho(1.0, 1.0);
    CHECK(std::fabs(sho_apc_beta_closed_form(1.0, 1.0, 2, 0.4, 2.0) -
                    solve_beta_erasure(equal_taps, 0.16, 2.0)) < 1e-9);

    // q^K * P * (s0 - s1) = 1 makes the quadratic degenerate
    CHECK_THROWS_AS(sho_apc_beta_closed_form(1.0, 0.0, 1, 0.5, 2.0), DegenerateTapsError);
}

TEST_CASE("sho/apc closed-form rate agrees with both engine paths") {
    const double q = 0.3;
    const int K = 5;
    const double rate = sho_apc_rate(1.0, 0.5, K, q, kGamma5dB);
    CHECK(std::fabs(rate - kShoApcRate5dB) < 1e-11);
    CHECK(std::fabs(rate - mcp_rate_erasure(kHalf, std::pow(q, K), kGamma5dB)) < 1e-9);

    const VirtualGainDistribution apc =
        apc_distribution(ActivityModel(K, q, kGamma5dB));
    CHECK(std::fabs(rate - mcp_rate_general(kHalf, apc, 1.0)) < 1e-8);
}

TEST_CASE("sho/apc rate edges and degenerate fallback") {
    // no erasures: beta = 1 and the divergence vanishes
    CHECK(std::fabs(sho_apc_rate(1.0, 0.5, 3, 0.0, 2.0) - log_integral(kHalf, 2.0)) < 1e-12);
    CHECK(sho_apc_rate(1.0, 0.5, 3, 1.0, 2.0) == 0.0);

    // the degenerate denominator path falls back to bisection
    const double fallback = sho_apc_rate(1.0, 0.0, 1, 0.5, 2.0);
    CHECK(std::fabs(fallback - mcp_rate_erasure(kFlat, 0.5, 2.0)) < 1e-9);
}

TEST_CASE("mcp rates coincide across schemes when q = 0") {
    for (int K : {1, 4}) {
        const ActivityModel model(K, 0.0, kGamma5dB);
        const double npc = mcp_rate_general(kHalf, npc_distribution(model), 1.0);
        const double apc_general = mcp_rate_general(kHalf, apc_distribution(model), 1.0);
        const double apc_erasure = mcp_rate_erasure(kHalf, 0.0, kGamma5dB);
        const double cpc = mcp_rate_general(kHalf, cpc_distribution(model), 1.0);
        CHECK(std::fabs(npc - apc_general) < 1e-9);
        CHECK(std::fabs(npc - apc_erasure) < 1e-9);
        CHECK(std::fabs(npc - cpc) < 1e-9);
    }
}
