#pragma once

#include <cmath>
#include <cstdint>

namespace otae {

// Splittable counter-style random stream built on the splitmix64 mixer.
// Streams are derived from a (master seed, work-item index) pair, so the
// draws consumed by one trial never depend on how trials are scheduled
// across threads.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64 finalizer; bijective, strong avalanche.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
        const std::uint64_t h = mix(master + 0x9e3779b97f4a7c15ULL * (index + 1));
        return mix(h ^ index);
    }

    static Rng stream(std::uint64_t master, std::uint64_t index) {
        return Rng(derive_seed(master, index));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via the polar (Marsaglia) method. The second draw of
    // each accepted pair is cached, so the cache is part of the stream state.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace otae
