#pragma once

#include "otae/rng.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace otae {

// Gaussian multiple-access channel: n senders, s uses, per-sender average
// power budget P, additive noise variance noise_var per use. noise_var == 0
// is allowed as a noiseless test limit but rejected by the capacity formulas.
struct ChannelSpec {
    long n = 1;
    long s = 1;
    double power_p = 1.0;
    double noise_var = 1.0;

    ChannelSpec(long senders, long uses, double p, double nv)
        : n(senders), s(uses), power_p(p), noise_var(nv) {
        if (n < 1) throw std::invalid_argument("ChannelSpec: n must be >= 1");
        if (s < 1) throw std::invalid_argument("ChannelSpec: s must be >= 1");
        if (!(power_p > 0.0)) throw std::invalid_argument("ChannelSpec: power_p must be > 0");
        if (!(noise_var >= 0.0)) throw std::invalid_argument("ChannelSpec: noise_var must be >= 0");
    }
};

// Adds one channel noise realization in place. A noiseless channel consumes
// no random draws.
inline void add_noise(const ChannelSpec& chan, std::span<double> y, Rng& rng) {
    if (static_cast<long>(y.size()) != chan.s) throw std::invalid_argument("add_noise: length != s");
    if (chan.noise_var == 0.0) return;
    const double sd = std::sqrt(chan.noise_var);
    for (auto& v : y) v += sd * rng.next_normal();
}

// Y_t = sum_i X_it + Z_t. Expects exactly n inputs of length s.
inline std::vector<double> transmit(const ChannelSpec& chan,
                                    std::span<const std::vector<double>> inputs, Rng& rng) {
    if (static_cast<long>(inputs.size()) != chan.n)
        throw std::invalid_argument("transmit: expected one input vector per sender");
    std::vector<double> y(static_cast<std::size_t>(chan.s), 0.0);
    for (const auto& x : inputs) {
        if (static_cast<long>(x.size()) != chan.s)
            throw std::invalid_argument("transmit: input length != s");
        for (std::size_t t = 0; t < y.size(); ++t) y[t] += x[t];
    }
    add_noise(chan, y, rng);
    return y;
}

inline std::vector<double> transmit(const ChannelSpec& chan,
                                    const std::vector<std::vector<double>>& inputs, Rng& rng) {
    return transmit(chan, std::span<const std::vector<double>>(inputs), rng);
}

// Errorless bits each sender can deliver over s uses at the equal-rate sum
// point of the capacity region: (s / 2n) log2(1 + n P / noise_var).
inline double mac_bits_per_sender(const ChannelSpec& chan) {
    if (chan.noise_var == 0.0)
        throw std::domain_error("mac_bits_per_sender: noiseless channel has unbounded capacity");
    return static_cast<double>(chan.s) / (2.0 * static_cast<double>(chan.n)) *
           std::log2(1.0 + static_cast<double>(chan.n) * chan.power_p / chan.noise_var);
}

// Upper bound on the mutual information between all inputs and the output
// over s uses: (s / 2) log2(1 + n P / noise_var). Equals n times the
// per-sender bit budget.
inline double mac_sum_rate_bound(const ChannelSpec& chan) {
    if (chan.noise_var == 0.0)
        throw std::domain_error("mac_sum_rate_bound: noiseless channel has unbounded capacity");
    return static_cast<double>(chan.s) / 2.0 *
           std::log2(1.0 + static_cast<double>(chan.n) * chan.power_p / chan.noise_var);
}

}  // namespace otae
