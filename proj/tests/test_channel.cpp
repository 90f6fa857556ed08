#include "otae/channel.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace otae;

TEST_CASE("channel construction rejects bad parameters") {
    CHECK_THROWS_AS(ChannelSpec(0, 1, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(1, 0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(1, 1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelSpec(1, 1, 1.0, -1.0), std::invalid_argument);
    CHECK_NOTHROW(ChannelSpec(1, 1, 1.0, 0.0));  // noiseless test limit
}

TEST_CASE("noiseless transmission is pure superposition") {
    Rng rng(1);
    SUBCASE("all-zero inputs give zero output") {
        const ChannelSpec chan(3, 2, 1.0, 0.0);
        const std::vector<std::vector<double>> inputs(3, std::vector<double>{0.0, 0.0});
        const auto y = transmit(chan, inputs, rng);
        CHECK(y == std::vector<double>{0.0, 0.0});
    }
    SUBCASE("3 + 4 = 7") {
        const ChannelSpec chan(2, 1, 10.0, 0.0);
        const std::vector<std::vector<double>> inputs{{3.0}, {4.0}};
        CHECK(transmit(chan, inputs, rng)[0] == 7.0);
    }
}

TEST_CASE("transmit rejects shape mismatches") {
    const ChannelSpec chan(2, 3, 1.0, 0.0);
    Rng rng(2);
    const std::vector<std::vector<double>> too_few{{0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(transmit(chan, too_few, rng), std::invalid_argument);
    const std::vector<std::vector<double>> wrong_len{{0.0, 0.0, 0.0}, {0.0}};
    CHECK_THROWS_AS(transmit(chan, wrong_len, rng), std::invalid_argument);
}

TEST_CASE("noise realizations have the configured variance") {
    const ChannelSpec chan(1, 1, 1.0, 1.0);
    const std::vector<std::vector<double>> zero{{0.0}};
    Rng rng(3);
    const int trials = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double y = transmit(chan, zero, rng)[0];
        sum += y;
        sum_sq += y * y;
    }
    const double mean = sum / trials;
    const double var = sum_sq / trials - mean * mean;
    CHECK(var > 0.97);
    CHECK(var < 1.03);
}

TEST_CASE("superposition is linear in the inputs (noiseless)") {
    const ChannelSpec chan(2, 4, 1.0, 0.0);
    Rng rng(4);
    const std::vector<std::vector<double>> a{{1.0, 2.0, -3.0, 0.5}, {0.25, -1.0, 2.0, 4.0}};
    const std::vector<std::vector<double>> b{{-2.0, 0.0, 1.0, 1.5}, {3.0, 0.5, -0.5, -4.0}};
    std::vector<std::vector<double>> ab = a;
    for (std::size_t i = 0; i < ab.size(); ++i)
        for (std::size_t t = 0; t < ab[i].size(); ++t) ab[i][t] += b[i][t];
    const auto ya = transmit(chan, a, rng);
    const auto yb = transmit(chan, b, rng);
    const auto yab = transmit(chan, ab, rng);
    for (std::size_t t = 0; t < yab.size(); ++t) CHECK(yab[t] == ya[t] + yb[t]);
}

TEST_CASE("noise is uncorrelated across channel uses") {
    const ChannelSpec chan(1, 2, 1.0, 1.0);
    const std::vector<std::vector<double>> zero{{0.0, 0.0}};
    Rng rng(5);
    const int trials = 100000;
    double cross = 0.0;
    for (int i = 0; i < trials; ++i) {
        const auto y = transmit(chan, zero, rng);
        cross += y[0] * y[1];
    }
    CHECK(std::abs(cross / trials) < 5.0 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("per-sender capacity bit budget") {
    CHECK(mac_bits_per_sender(ChannelSpec(1, 2, 3.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(mac_bits_per_sender(ChannelSpec(4, 4, 1.0, 4.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mac_bits_per_sender(ChannelSpec(2, 2, 1e-12, 1.0)) < 1e-11);
    CHECK_THROWS_AS(mac_bits_per_sender(ChannelSpec(1, 1, 1.0, 0.0)), std::domain_error);
}

TEST_CASE("sum-rate bound") {
    CHECK(mac_sum_rate_bound(ChannelSpec(1, 1, 1.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mac_sum_rate_bound(ChannelSpec(3, 2, 1.0, 3.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(mac_sum_rate_bound(ChannelSpec(1, 1, 1.0, 0.0)), std::domain_error);

    // always n times the per-sender budget
    for (long n : {1L, 2L, 5L, 17L}) {
        const ChannelSpec chan(n, 3, 0.7, 2.3);
        CHECK(mac_sum_rate_bound(chan) ==
              doctest::Approx(static_cast<double>(n) * mac_bits_per_sender(chan)).epsilon(1e-12));
    }
}
