#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cellrate/banded.hpp"
#include "cellrate/errors.hpp"
#include "cellrate/mc_oracle.hpp"
#include "cellrate/mcp_rate.hpp"
#include "support/full_model.hpp"

using namespace cellrate;

namespace {

using Atom = VirtualGainDistribution::Atom;

constexpr double kGamma5dB = 3.1622776601683795;
const ChannelProfile kHalf = ChannelProfile::sho(1.0, 0.5);

}  // namespace

TEST_CASE("single-cell determinant") {
    const ChannelProfile single(0, 0, {{1.0, 0.0}});
    for (double g : {0.0, 0.7, 3.0}) {
        const VirtualGainDistribution dist({Atom{g, 1.0}});
        const double rate = sample_throughput(single, dist, SimConfig(1, 1, 9), 0);
        CHECK(rate == doctest::Approx(std::log2(1.0 + g)).epsilon(1e-14));
    }
}

TEST_CASE("all-silent cells carry nothing") {
    const VirtualGainDistribution silent({Atom{0.0, 1.0}});
    for (int m : {2, 17, 101}) {
        CHECK(sample_throughput(kHalf, silent, SimConfig(m, 1, 3), 0) == 0.0);
    }
}

TEST_CASE("deterministic gains approach the spectral limit") {
    const VirtualGainDistribution fixed({Atom{1.0, 1.0}});
    const double finite = sample_throughput(kHalf, fixed, SimConfig(512, 1, 1), 0);
    CHECK(std::fabs(finite - 1.0927366575317556) < 0.01);
}

TEST_CASE("finite-size bias shrinks with M") {
    const auto dist = apc_distribution(ActivityModel(5, 0.3, kGamma5dB));
    const double analytic = mcp_rate_general(kHalf, dist, 1.0);
    double previous = 1e9;
    for (int m : {50, 200, 800}) {
        const McEstimate estimate = estimate_throughput(kHalf, dist, SimConfig(m, 400, 0xb1a5));
        const double bias = std::fabs(estimate.mean - analytic);
        CHECK(bias <= previous + 1e-12);
        previous = bias;
    }
}

TEST_CASE("samples are nonnegative, finite, and reproducible") {
    const auto dist = npc_distribution(ActivityModel(5, 0.3, kGamma5dB));
    const SimConfig cfg(64, 1, 0xabcdef);
    for (int t = 0; t < 32; ++t) {
        const double value = sample_throughput(kHalf, dist, cfg, t);
        CHECK(value >= 0.0);
        CHECK(std::isfinite(value));
        CHECK(value == sample_throughput(kHalf, dist, cfg, t));
    }
}

TEST_CASE("estimate reduces over per-trial samples in index order") {
    const auto dist = cpc_distribution(ActivityModel(4, 0.4, 2.0));
    const SimConfig cfg(32, 3, 0x77);
    const McEstimate estimate = estimate_throughput(kHalf, dist, cfg);
    double sum = 0.0;
    for (int t = 0; t < 3; ++t) sum += sample_throughput(kHalf, dist, cfg, t);
    CHECK(estimate.mean == doctest::Approx(sum / 3.0).epsilon(1e-15));

    const McEstimate single = estimate_throughput(kHalf, dist, SimConfig(32, 1, 0x77));
    CHECK(single.mean == sample_throughput(kHalf, dist, SimConfig(32, 1, 0x77), 0));
    CHECK(single.std_error == 0.0);
}

TEST_CASE("standard error scales like one over the root of the trial count") {
    const auto dist = apc_distribution(ActivityModel(5, 0.3, kGamma5dB));
    const McEstimate few = estimate_throughput(kHalf, dist, SimConfig(100, 25, 0x7));
    const McEstimate many = estimate_throughput(kHalf, dist, SimConfig(100, 100, 0x7));
    const double ratio = few.std_error / many.std_error;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.6);
}

TEST_CASE("oracle matches the analytic rate at moderate size") {
    const auto dist = apc_distribution(ActivityModel(5, 0.3, kGamma5dB));
    const double analytic = mcp_rate_general(kHalf, dist, 1.0);
    const McEstimate estimate = estimate_throughput(kHalf, dist, SimConfig(400, 50, 0xdeed));
    CHECK(std::fabs(estimate.mean - analytic) <=
          std::max(3.0 * estimate.std_error, 0.02 * analytic));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(SimConfig(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(SimConfig(4, 0, 1), std::invalid_argument);
    const VirtualGainDistribution dist({Atom{1.0, 1.0}});
    CHECK_THROWS_AS(sample_throughput(kHalf, dist, SimConfig(1, 1, 1), 0),
                    std::invalid_argument);  // M below the band width
}

TEST_CASE("banded cholesky rejects indefinite input") {
    BandedHermitianMatrix matrix(3, 1);
    matrix.at(0, 0) = 1.0;
    matrix.at(1, 0) = 5.0;  // dominates the diagonal
    matrix.at(0, 1) = 1.0;
    matrix.at(1, 1) = 0.0;
    matrix.at(0, 2) = 1.0;
    CHECK_THROWS_AS(matrix.cholesky_log2_det(), NumericalFailureError);
}

TEST_CASE("full per-user model equals the reduced virtual-user model") {
    Xoshiro256 rng(0xf00d, 0);
    for (int i = 0; i < 50; ++i) {
        const auto instance = celltest::random_instance(rng);
        const double full = celltest::full_model_rate(instance);
        const double reduced_dense = celltest::reduced_model_rate_dense(instance);
        const double reduced_banded =
            throughput_log2_det(instance.profile, celltest::reduced_gains(instance));
        CHECK(std::fabs(full - reduced_dense) < 1e-12);
        CHECK(std::fabs(full - reduced_banded) < 1e-12);
    }
}

TEST_CASE("input and output fading placements share the determinant") {
    Xoshiro256 rng(0x10af, 0);
    for (int i = 0; i < 30; ++i) {
        const auto instance = celltest::random_instance(rng);
        const auto gains = celltest::reduced_gains(instance);
        Eigen::MatrixXcd amp_diag = Eigen::MatrixXcd::Zero(instance.M, instance.M);
        for (int m = 0; m < instance.M; ++m)
            amp_diag(m, m) = std::sqrt(gains[static_cast<std::size_t>(m)]);

        Eigen::MatrixXcd toeplitz = Eigen::MatrixXcd::Zero(instance.M, instance.M);
        for (int r = 0; r < instance.M; ++r)
            for (int c = 0; c < instance.M; ++c) {
                const int offset = c - r;
                if (offset >= -instance.profile.l1() && offset <= instance.profile.l2())
                    toeplitz(r, c) = instance.profile.tap(offset);
            }

        const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(instance.M, instance.M);
        const Eigen::MatrixXcd output_side =
            identity + toeplitz * amp_diag * amp_diag.adjoint() * toeplitz.adjoint();
        const Eigen::MatrixXcd input_side =
            identity + amp_diag.adjoint() * toeplitz.adjoint() * toeplitz * amp_diag;
        const double lhs = celltest::log2_det_hermitian(output_side);
        const double rhs = celltest::log2_det_hermitian(input_side);
        CHECK(std::fabs(lhs - rhs) < 1e-12);
    }
}
