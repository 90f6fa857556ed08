#include "otae/bounds.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace otae;

namespace {
double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }
}  // namespace

// --- digital bounds -------------------------------------------------------------

TEST_CASE("digital lower bound, gaussian location") {
    SUBCASE("value 1 with the radius term suppressed; precondition fails") {
        const GaussianLocationModel model(1, 1.0, 1e9);
        const ChannelSpec chan(1, 1, 1.0, 1.0);
        const BoundResult r = digital_lb_gaussian(model, chan);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_FALSE(r.valid);
        CHECK(!r.validity_note.empty());
    }
    SUBCASE("pinned evaluation with the precondition holding") {
        const GaussianLocationModel model(4, 1.0, std::numbers::pi);  // B^2 = pi^2
        const ChannelSpec chan(16, 4, 1.0, 1.0);
        const BoundResult r = digital_lb_gaussian(model, chan);
        CHECK(r.value == doctest::Approx(0.7862465289312904).epsilon(1e-12));
        CHECK(r.valid);
    }
    SUBCASE("decays with n like 1/log") {
        const GaussianLocationModel model(1, 10.0, 4.0);
        double prev = 1e300;
        for (long n : {100L, 1000L, 10000L, 100000L, 1000000L}) {
            const double v = digital_lb_gaussian(model, ChannelSpec(n, 1, 0.1, 1.0)).value;
            CHECK(v < prev);
            prev = v;
        }
    }
    SUBCASE("noiseless channel rejected") {
        CHECK_THROWS_AS(
            digital_lb_gaussian(GaussianLocationModel(1, 1.0, 1.0), ChannelSpec(1, 1, 1.0, 0.0)),
            std::domain_error);
    }
}

TEST_CASE("digital lower bound, product bernoulli") {
    const ProductBernoulliModel model(1, 0.25);
    SUBCASE("pinned evaluation at eps = 1/4") {
        const BoundResult r = digital_lb_bernoulli(model, ChannelSpec(1, 1, 1.0, 1.0), 0.25);
        CHECK(r.value == doctest::Approx(0.006059695948314594).epsilon(1e-12));
    }
    SUBCASE("bound vanishes as eps -> 0") {
        const BoundResult r = digital_lb_bernoulli(model, ChannelSpec(1, 1, 1.0, 1.0), 1e-3);
        CHECK(r.value < 1e-6);
    }
    SUBCASE("eps domain enforced") {
        CHECK_THROWS_AS(digital_lb_bernoulli(model, ChannelSpec(1, 1, 1.0, 1.0), 0.5),
                        std::invalid_argument);
        CHECK_THROWS_AS(digital_lb_bernoulli(model, ChannelSpec(1, 1, 1.0, 1.0), 0.0),
                        std::invalid_argument);
    }
    SUBCASE("model default eps is used") {
        const ChannelSpec chan(5, 1, 1.0, 1.0);
        CHECK(digital_lb_bernoulli(model, chan).value ==
              digital_lb_bernoulli(model, chan, 0.25).value);
    }
}

// --- analog bounds -----------------------------------------------------------------

TEST_CASE("general analog lower bound") {
    SUBCASE("unit configuration with the radius term suppressed") {
        const BoundResult r = analog_lb_general(1, 1, 1, 1.0, 1.0, 1.0, 1e9);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("leading d/n factor halves when n doubles at held denominator") {
        // doubling n with noise doubled (same SNR) and B^2 halved (same n B^2)
        const BoundResult a = analog_lb_general(2, 10, 4, 0.5, 1.0, 1.2, 2.0);
        const BoundResult b = analog_lb_general(2, 20, 4, 0.5, 2.0, 1.2, 2.0 / std::sqrt(2.0));
        CHECK(rel_diff(b.value, a.value / 2.0) < 1e-12);
    }
    SUBCASE("pinned evaluation") {
        const BoundResult r = analog_lb_general(2, 100, 2, 0.1, 1.0, std::pow(10.0, -0.5), 4.0);
        CHECK(r.value == doctest::Approx(0.056800163158188866).epsilon(1e-12));
    }
    SUBCASE("input domain") {
        CHECK_THROWS_AS(analog_lb_general(1, 1, 1, 1.0, 0.0, 1.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(analog_lb_general(1, 1, 1, 1.0, 1.0, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(analog_lb_general(1, 1, 1, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("gaussian analog lower bound") {
    SUBCASE("identical to the general bound at rho = 1/sigma") {
        for (double var : {0.5, 2.0, 10.0}) {
            const GaussianLocationModel model(3, var, 2.5);
            const ChannelSpec chan(40, 6, 0.7, 1.3);
            const double via_general =
                analog_lb_general(3, 40, 6, 0.7, 1.3, 1.0 / std::sqrt(var), 2.5).value;
            CHECK(rel_diff(analog_lb_gaussian(model, chan).value, via_general) < 1e-12);
        }
    }
    SUBCASE("vanishing-capacity limit d B^2 / pi^2") {
        const GaussianLocationModel model(1, 1.0, 1.0);
        const ChannelSpec chan(1, 1, 1.0, 1e18);
        CHECK(analog_lb_gaussian(model, chan).value ==
              doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-6));
    }
    SUBCASE("pinned low-SNR evaluation") {
        const GaussianLocationModel model(1, 10.0, 4.0);
        const ChannelSpec chan(100, 1, 0.1, 1.0);
        CHECK(analog_lb_gaussian(model, chan).value ==
              doctest::Approx(0.028400081579094436).epsilon(1e-12));
    }
}

TEST_CASE("bernoulli analog lower bound") {
    const ProductBernoulliModel model(1, 0.25);
    SUBCASE("identical to the general bound at rho = 1/(1/2 - 2 eps^2), B = eps") {
        const ChannelSpec chan(25, 1, 2.0, 0.7);
        const double via_general = analog_lb_general(1, 25, 1, 2.0, 0.7, 8.0 / 3.0, 0.25).value;
        CHECK(rel_diff(analog_lb_bernoulli(model, chan).value, via_general) < 1e-12);
    }
    SUBCASE("pinned evaluations") {
        CHECK(analog_lb_bernoulli(model, ChannelSpec(1, 1, 1.0, 1.0)).value ==
              doctest::Approx(0.006059695948314594).epsilon(1e-12));
        CHECK(analog_lb_bernoulli(model, ChannelSpec(100, 1, 0.1, 1.0)).value ==
              doctest::Approx(0.0003819776916480441).epsilon(1e-12));
    }
    SUBCASE("best-over-eps dominates the fixed default") {
        const ChannelSpec chan(50, 1, 1.0, 1.0);
        CHECK(analog_lb_bernoulli_best(model, chan).value >=
              analog_lb_bernoulli(model, chan).value);
        CHECK(digital_lb_bernoulli_best(model, chan).value >=
              digital_lb_bernoulli(model, chan).value);
    }
}

TEST_CASE("general MAC bound") {
    SUBCASE("zero sum capacity leaves only the prior term") {
        const BoundResult r = general_mac_lb(1, 1, 1, 1.0, 1.0, 0.0);
        CHECK(r.value ==
              doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
    }
    SUBCASE("matches the Gaussian-MAC bound at its sum capacity") {
        const ChannelSpec chan(12, 4, 0.8, 1.7);
        const double c_total =
            0.5 * std::log2(1.0 + static_cast<double>(chan.n) * chan.power_p / chan.noise_var);
        const double via_general = general_mac_lb(2, 12, 4, 1.4, 0.9, c_total).value;
        CHECK(rel_diff(via_general, analog_lb_general(2, 12, 4, 0.8, 1.7, 1.4, 0.9).value) < 1e-12);
    }
    SUBCASE("pinned evaluation") {
        CHECK(general_mac_lb(2, 4, 2, 1.0, 1.0, 1.0).value ==
              doctest::Approx(0.11192189570117607).epsilon(1e-12));
    }
    SUBCASE("negative capacity rejected") {
        CHECK_THROWS_AS(general_mac_lb(1, 1, 1, 1.0, 1.0, -0.1), std::invalid_argument);
    }
}

// --- ordering, gap, monotonicity -----------------------------------------------------

TEST_CASE("analog lower bounds never exceed the achievable closed forms") {
    Rng rng(314159);
    int checked = 0;
    while (checked < 200) {
        const int d = 1 + static_cast<int>(rng.next_unit() * 12.0);
        const int m = 1 + static_cast<int>(rng.next_unit() * 4.0);
        const int extra = static_cast<int>(rng.next_unit() * d);
        const long n = std::max(1L, static_cast<long>(std::pow(10.0, rng.next_unit() * 5.0)));
        const double p = std::pow(10.0, rng.next_unit() * 4.0 - 2.0);
        const double noise = std::pow(10.0, rng.next_unit() * 4.0 - 2.0);
        const long s = static_cast<long>(m) * d + extra;
        const ChannelSpec chan(n, s, p, noise);

        ModelSpec model = (checked % 2 == 0)
                              ? ModelSpec(GaussianLocationModel(d, std::pow(10.0, rng.next_unit() * 2.0 - 1.0),
                                                                0.5 + 4.5 * rng.next_unit()))
                              : ModelSpec(ProductBernoulliModel(d, 0.25));
        const double achievable = minimax_risk(model, chan);
        const double lower = analog_lb(model, chan).value;
        CHECK(lower <= achievable + 1e-12);
        CHECK(lower >= 0.0);
        ++checked;
    }
}

TEST_CASE("achievability sits within a 2 log2(1 + nP/noise) factor of the analog bound") {
    // low-SNR sweep with B^2 / sigma^2 = 1.6 <= 2, n >= 100
    const GaussianLocationModel model(1, 10.0, 4.0);
    for (long n : {100L, 1000L, 10000L, 100000L, 1000000L}) {
        const ChannelSpec chan(n, 1, 0.1, 1.0);
        const double ratio = gaussian_minimax_risk(model, chan) / analog_lb_gaussian(model, chan).value;
        const double cap = 2.0 * std::log2(1.0 + static_cast<double>(n) * chan.power_p / chan.noise_var);
        CHECK(ratio <= cap);
    }
}

TEST_CASE("bounds are monotone in resources") {
    const GaussianLocationModel gm(2, 10.0, 4.0);
    const ProductBernoulliModel bm(2, 0.25);
    for (long n : {10L, 1000L}) {
        for (double p : {0.1, 10.0}) {
            const ChannelSpec base(n, 2, p, 1.0);
            const ChannelSpec more_s(n, 8, p, 1.0);
            const ChannelSpec more_p(n, 2, 2.0 * p, 1.0);
            const ChannelSpec more_n(2 * n, 2, p, 1.0);
            for (const ModelSpec model : {ModelSpec(gm), ModelSpec(bm)}) {
                CHECK(analog_lb(model, more_s).value <= analog_lb(model, base).value + 1e-15);
                CHECK(analog_lb(model, more_p).value <= analog_lb(model, base).value + 1e-15);
                CHECK(analog_lb(model, more_n).value <= analog_lb(model, base).value + 1e-15);
                CHECK(digital_lb(model, more_s).value <= digital_lb(model, base).value + 1e-15);
                CHECK(digital_lb(model, more_p).value <= digital_lb(model, base).value + 1e-15);
            }
        }
    }
}

// --- crossover ------------------------------------------------------------------------

TEST_CASE("crossover search") {
    SUBCASE("no valid digital rows means no crossover") {
        // enormous SNR at tiny n keeps the bit budget above d for the whole sweep
        const ModelSpec model = GaussianLocationModel(1, 1.0, 1.0);
        const std::vector<long> sweep{1, 2, 4, 8, 16, 30};
        CHECK_FALSE(crossover_n(model, 1e12, 1.0, sweep).has_value());
    }
    SUBCASE("high-SNR sweep has a finite crossover with a widening gap") {
        const ModelSpec model = GaussianLocationModel(4, 10.0, 4.0);
        std::vector<long> sweep;
        for (int k = 4; k <= 24; ++k)
            sweep.push_back(static_cast<long>(std::llround(std::pow(10.0, k / 4.0))));
        const auto cross = crossover_n(model, 1000.0, 1.0, sweep);
        REQUIRE(cross.has_value());
        CHECK(cross->n <= 1000000);
        CHECK(cross->analog_risk < cross->digital_bound);

        double prev_ratio = 0.0;
        for (long n : sweep) {
            if (n < cross->n) continue;
            const ChannelSpec chan(n, 4, 1000.0, 1.0);
            const BoundResult dig = digital_lb(model, chan);
            REQUIRE(dig.valid);
            const double ratio = dig.value / minimax_risk(model, chan);
            CHECK(ratio > prev_ratio);
            prev_ratio = ratio;
        }
    }
}
