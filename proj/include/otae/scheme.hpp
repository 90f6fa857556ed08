#pragma once

#include "otae/channel.hpp"
#include "otae/model.hpp"
#include "otae/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace otae {

// Per-coordinate symbol map f(u) = scale * u + offset_j, shared by all
// senders. Binary encoders (Bernoulli bits) are the u in {0,1} restriction,
// i.e. symbol values f(0) = offset_j and f(1) = scale + offset_j.
struct AffineEncoder {
    double scale = 1.0;
    std::vector<double> offset;  // length d; empty means all-zero

    double offset_at(std::size_t j) const { return offset.empty() ? 0.0 : offset[j]; }
    double map(double u, std::size_t j) const { return scale * u + offset_at(j); }

    static AffineEncoder binary(double f0, double f1, int d) {
        AffineEncoder e;
        e.scale = f1 - f0;
        e.offset.assign(static_cast<std::size_t>(d), f0);
        return e;
    }
};

// Per-block estimate gain * Y_block + offset, coordinatewise.
struct AffineEstimator {
    double gain = 1.0;
    std::vector<double> offset;  // length d; empty means all-zero

    double offset_at(std::size_t j) const { return offset.empty() ? 0.0 : offset[j]; }
};

// Which noise variance keys the low/high-noise branch of the Bernoulli
// minimax estimator when the encoder is block-repeated m times. The closed
// forms print the branch condition on the raw channel noise while the risk
// substitutes noise_var / m; `effective_noise` keys the branch on
// noise_var / m instead.
enum class RegimeRule { printed_label, effective_noise };

struct Scheme {
    ModelSpec model;
    ChannelSpec channel;
    AffineEncoder encoder;
    AffineEstimator estimator;
    int repetitions = 1;                    // m = floor(s/d) blocks, laid out contiguously
    bool clamp_to_parameter_space = false;  // exploratory only; breaks the exact risk forms

    int d() const { return dimension(model); }
};

namespace detail {
inline void require_scheme_geometry(int d, const ChannelSpec& chan) {
    if (chan.s < d)
        throw std::domain_error("scheme: s < d is unsupported (one channel use per coordinate required)");
}
}  // namespace detail

// --- Gaussian location -------------------------------------------------------

// Scale-only encoder alpha = sqrt(P / (B^2 + sigma^2)) with the matching
// 1/(alpha n) estimator, block-repeated floor(s/d) times with estimates
// averaged. Meets the power budget with equality on the parameter boundary.
inline Scheme gaussian_minimax_scheme(const GaussianLocationModel& model, const ChannelSpec& chan) {
    detail::require_scheme_geometry(model.d, chan);
    const double alpha = std::sqrt(chan.power_p / (model.radius_b * model.radius_b + model.sample_var));
    Scheme s{ModelSpec(model), chan, AffineEncoder{}, AffineEstimator{}, static_cast<int>(chan.s / model.d)};
    s.encoder.scale = alpha;
    s.estimator.gain = 1.0 / (alpha * static_cast<double>(chan.n));
    return s;
}

// Worst-case squared-error risk of the scheme above:
//   (d sigma^2 / n) [1 + noise_var / (m n P) * (1 + B^2 / sigma^2)],  m = floor(s/d).
inline double gaussian_minimax_risk(const GaussianLocationModel& model, const ChannelSpec& chan) {
    detail::require_scheme_geometry(model.d, chan);
    const double m = static_cast<double>(chan.s / model.d);
    const double n = static_cast<double>(chan.n);
    const double b2_over_var = model.radius_b * model.radius_b / model.sample_var;
    return static_cast<double>(model.d) * model.sample_var / n *
           (1.0 + chan.noise_var / (m * n * chan.power_p) * (1.0 + b2_over_var));
}

// Bayes estimator and risk for a N(mu, prior_var I_d) prior over theta when
// all senders use f(u) = alpha u + beta and s = d. Serves as the oracle for
// the least-favorable-prior route to the minimax estimator.
struct BayesSolution {
    AffineEstimator estimator;
    double risk = 0.0;
};

inline BayesSolution gaussian_bayes_estimator(const GaussianLocationModel& model,
                                              const ChannelSpec& chan, const Theta& prior_mean,
                                              double prior_var, const AffineEncoder& encoder) {
    if (chan.s != model.d) throw std::invalid_argument("gaussian_bayes_estimator: requires s == d");
    if (encoder.scale == 0.0) throw std::domain_error("gaussian_bayes_estimator: degenerate encoder (alpha == 0)");
    if (static_cast<int>(prior_mean.size()) != model.d)
        throw std::invalid_argument("gaussian_bayes_estimator: prior mean dimension mismatch");
    if (!(prior_var > 0.0)) throw std::invalid_argument("gaussian_bayes_estimator: prior_var must be > 0");

    const double a = encoder.scale;
    const double n = static_cast<double>(chan.n);
    const double obs_var = a * a * n * model.sample_var + chan.noise_var;  // var of Y_t given theta
    const double gain = a * n * prior_var / (a * a * n * n * prior_var + obs_var);

    BayesSolution out;
    out.estimator.gain = gain;
    out.estimator.offset.resize(prior_mean.size());
    // theta_hat = mu + gain (Y - a n mu - n beta), collected into gain * Y + offset
    for (std::size_t j = 0; j < prior_mean.size(); ++j)
        out.estimator.offset[j] =
            prior_mean[j] * (1.0 - gain * a * n) - gain * n * encoder.offset_at(j);
    out.risk = static_cast<double>(model.d) * obs_var / (a * a * n * n + obs_var / prior_var);
    return out;
}

// --- product Bernoulli -------------------------------------------------------

// Candidate estimator gains for the symmetric binary encoder with symbol
// magnitude c: the low-noise gain is noise-free, the high-noise gain shrinks
// with the (effective) channel noise.
inline double bernoulli_gain_low(long n, double c) {
    const double rn = std::sqrt(static_cast<double>(n));
    return 1.0 / (2.0 * rn * c * (rn + 1.0));
}

inline double bernoulli_gain_high(long n, double c, double noise_var) {
    const double dn = static_cast<double>(n);
    return dn * c / (2.0 * (noise_var + dn * dn * c * c));
}

// Branch test: low noise iff regime_noise_var <= n^(3/2) c^2.
inline bool bernoulli_low_noise(long n, double c, double regime_noise_var) {
    return regime_noise_var <= std::pow(static_cast<double>(n), 1.5) * c * c;
}

// Symbol-level encoder 0 -> -sqrt(P), 1 -> +sqrt(P) per coordinate, estimator
// gain per the minimax branch with the block-repetition noise reduction
// noise_var / m folded into the gain formula, offset 1/2.
inline Scheme bernoulli_minimax_scheme(const ProductBernoulliModel& model, const ChannelSpec& chan,
                                       RegimeRule rule = RegimeRule::printed_label) {
    detail::require_scheme_geometry(model.d, chan);
    const int m = static_cast<int>(chan.s / model.d);
    const double c = std::sqrt(chan.power_p);
    const double eff_noise = chan.noise_var / static_cast<double>(m);
    const double regime_noise = (rule == RegimeRule::printed_label) ? chan.noise_var : eff_noise;

    Scheme s{ModelSpec(model), chan, AffineEncoder::binary(-c, c, model.d), AffineEstimator{}, m};
    s.estimator.gain = bernoulli_low_noise(chan.n, c, regime_noise)
                           ? bernoulli_gain_low(chan.n, c)
                           : bernoulli_gain_high(chan.n, c, eff_noise);
    s.estimator.offset.assign(static_cast<std::size_t>(model.d), 0.5);
    return s;
}

// Worst-case risk of the scheme above, piecewise in the noise regime:
//   low:  d / (4 (sqrt(n)+1)^2) * (1 + noise_var / (m n P))
//   high: d / 4 * 1 / (1 + n * m n P / noise_var)
inline double bernoulli_minimax_risk(const ProductBernoulliModel& model, const ChannelSpec& chan,
                                     RegimeRule rule = RegimeRule::printed_label) {
    detail::require_scheme_geometry(model.d, chan);
    const double m = static_cast<double>(chan.s / model.d);
    const double n = static_cast<double>(chan.n);
    const double d = static_cast<double>(model.d);
    const double eff_noise = chan.noise_var / m;
    const double regime_noise = (rule == RegimeRule::printed_label) ? chan.noise_var : eff_noise;
    if (bernoulli_low_noise(chan.n, std::sqrt(chan.power_p), regime_noise)) {
        const double rn = std::sqrt(n);
        return d / (4.0 * (rn + 1.0) * (rn + 1.0)) * (1.0 + eff_noise / (n * chan.power_p));
    }
    return d / 4.0 / (1.0 + n * (n * chan.power_p / eff_noise));
}

// Exact risk of the scalar scheme (symmetric symbols +-c, affine estimator
// gain * Y + offset) at a fixed theta:
//   gain^2 [4 n c^2 theta (1-theta) + noise_var] + [gain n c (2 theta - 1) + offset - theta]^2.
inline double bernoulli_affine_risk(double theta, double c, long n, double noise_var, double gain,
                                    double offset) {
    const double dn = static_cast<double>(n);
    const double var = gain * gain * (4.0 * dn * c * c * theta * (1.0 - theta) + noise_var);
    const double bias = gain * dn * c * (2.0 * theta - 1.0) + offset - theta;
    return var + bias * bias;
}

// sup over theta in [0,1] of the exact risk above. The risk is quadratic in
// theta, so the supremum sits at an endpoint or, when the quadratic opens
// downward, at the interior vertex.
struct WorstCaseRisk {
    double value = 0.0;
    double argmax_theta = 0.0;
};

inline WorstCaseRisk bernoulli_worstcase_risk_of(double gain, double offset, double c, long n,
                                                 double noise_var) {
    const double dn = static_cast<double>(n);
    const double p = 2.0 * gain * dn * c - 1.0;   // slope of the bias in theta
    const double q = offset - gain * dn * c;      // bias at theta = 0
    const double curv = p * p - 4.0 * gain * gain * dn * c * c;  // theta^2 coefficient
    const double lin = 4.0 * gain * gain * dn * c * c + 2.0 * p * q;

    auto risk_at = [&](double theta) { return bernoulli_affine_risk(theta, c, n, noise_var, gain, offset); };

    WorstCaseRisk best{risk_at(0.0), 0.0};
    const double at_one = risk_at(1.0);
    if (at_one > best.value) best = {at_one, 1.0};
    if (curv < 0.0) {
        const double vertex = -lin / (2.0 * curv);
        if (vertex > 0.0 && vertex < 1.0) {
            const double at_vertex = risk_at(vertex);
            if (at_vertex > best.value) best = {at_vertex, vertex};
        }
    }
    return best;
}

// Recenters a two-symbol encoder f(0) = a, f(1) = b to the symmetric form
// +-c with c = (b - a) / 2. The receiver subtracts n (a + b) / 2 from Y
// before estimating; risk as a function of theta is unchanged.
struct CanonicalBinaryEncoder {
    double c = 0.0;
    double receiver_shift = 0.0;
};

inline CanonicalBinaryEncoder canonicalize_binary_encoder(double f0, double f1, long n) {
    return {(f1 - f0) / 2.0, static_cast<double>(n) * (f0 + f1) / 2.0};
}

// --- repetition ---------------------------------------------------------------

// m-fold block repetition with estimate averaging. The estimator is reused
// per block, so the returned scheme's risk equals the original's with
// noise_var / m in place of noise_var.
inline Scheme apply_repetition(const Scheme& scheme, int m) {
    if (m < 1) throw std::invalid_argument("apply_repetition: m must be >= 1");
    if (static_cast<long>(m) * scheme.d() > scheme.channel.s)
        throw std::invalid_argument("apply_repetition: m * d exceeds the number of channel uses");
    Scheme out = scheme;
    out.repetitions = m;
    return out;
}

// --- execution plumbing --------------------------------------------------------

// Symbol layout: uses [0, d) hold block 1, [d, 2d) block 2, ...; the trailing
// s - m*d uses transmit zero.
inline void encode_into(const Scheme& scheme, const Sample& u, std::span<double> x) {
    const std::size_t d = static_cast<std::size_t>(scheme.d());
    if (u.size() != d) throw std::invalid_argument("encode: sample dimension mismatch");
    if (static_cast<long>(x.size()) != scheme.channel.s)
        throw std::invalid_argument("encode: output length != s");
    for (std::size_t j = 0; j < d; ++j) x[j] = scheme.encoder.map(u[j], j);
    for (int b = 1; b < scheme.repetitions; ++b)
        std::copy_n(x.begin(), d, x.begin() + static_cast<std::ptrdiff_t>(d) * b);
    std::fill(x.begin() + static_cast<std::ptrdiff_t>(d) * scheme.repetitions, x.end(), 0.0);
}

inline std::vector<double> encode(const Scheme& scheme, const Sample& u) {
    std::vector<double> x(static_cast<std::size_t>(scheme.channel.s));
    encode_into(scheme, u, x);
    return x;
}

namespace detail {
inline void clamp_estimate(const ModelSpec& model, Theta& est) {
    if (const auto* g = std::get_if<GaussianLocationModel>(&model)) {
        double sq = 0.0;
        for (double v : est) sq += v * v;
        const double r = g->theta_radius();
        if (sq > r * r) {
            const double f = r / std::sqrt(sq);
            for (auto& v : est) v *= f;
        }
    } else {
        const auto& b = std::get<ProductBernoulliModel>(model);
        for (auto& v : est) v = std::clamp(v, b.box_lo(), b.box_hi());
    }
}
}  // namespace detail

// Applies the per-block affine estimator and averages across blocks.
inline Theta estimate(const Scheme& scheme, std::span<const double> y) {
    const std::size_t d = static_cast<std::size_t>(scheme.d());
    if (static_cast<long>(y.size()) != scheme.channel.s)
        throw std::invalid_argument("estimate: input length != s");
    Theta est(d, 0.0);
    for (int b = 0; b < scheme.repetitions; ++b) {
        const std::size_t base = d * static_cast<std::size_t>(b);
        for (std::size_t j = 0; j < d; ++j)
            est[j] += scheme.estimator.gain * y[base + j] + scheme.estimator.offset_at(j);
    }
    const double inv_m = 1.0 / static_cast<double>(scheme.repetitions);
    for (auto& v : est) v *= inv_m;
    if (scheme.clamp_to_parameter_space) detail::clamp_estimate(scheme.model, est);
    return est;
}

inline Theta estimate(const Scheme& scheme, const std::vector<double>& y) {
    return estimate(scheme, std::span<const double>(y));
}

// --- power audit -----------------------------------------------------------------

// E_theta || f(U) ||^2 for one d-use block of the encoder.
inline double expected_block_power(const GaussianLocationModel& model, const AffineEncoder& enc,
                                   const Theta& theta) {
    double sq = 0.0;
    for (int j = 0; j < model.d; ++j) {
        const double mean = enc.map(theta[static_cast<std::size_t>(j)], static_cast<std::size_t>(j));
        sq += mean * mean;
    }
    return sq + enc.scale * enc.scale * static_cast<double>(model.d) * model.sample_var;
}

inline double expected_block_power(const ProductBernoulliModel& model, const AffineEncoder& enc,
                                   const Theta& theta) {
    double sq = 0.0;
    for (int j = 0; j < model.d; ++j) {
        const double f0 = enc.map(0.0, static_cast<std::size_t>(j));
        const double f1 = enc.map(1.0, static_cast<std::size_t>(j));
        const double t = theta[static_cast<std::size_t>(j)];
        sq += (1.0 - t) * f0 * f0 + t * f1 * f1;
    }
    return sq;
}

inline double expected_block_power(const ModelSpec& model, const AffineEncoder& enc, const Theta& theta) {
    return std::visit([&](const auto& m) { return expected_block_power(m, enc, theta); }, model);
}

struct PowerAudit {
    double worst_average_power = 0.0;  // sup over theta of (1/s) E_theta ||f(U)||^2
    double budget = 0.0;
    bool passes = false;
};

namespace detail {
// Analytic worst case of the block power over the parameter space.
inline double worst_block_power(const GaussianLocationModel& model, const AffineEncoder& enc) {
    double offset_norm_sq = 0.0;
    for (int j = 0; j < model.d; ++j) {
        const double o = enc.offset_at(static_cast<std::size_t>(j));
        offset_norm_sq += o * o;
    }
    const double reach = std::abs(enc.scale) * model.theta_radius() + std::sqrt(offset_norm_sq);
    return reach * reach + enc.scale * enc.scale * static_cast<double>(model.d) * model.sample_var;
}

inline double worst_block_power(const ProductBernoulliModel& model, const AffineEncoder& enc) {
    double sq = 0.0;
    for (int j = 0; j < model.d; ++j) {
        const double f0 = enc.map(0.0, static_cast<std::size_t>(j));
        const double f1 = enc.map(1.0, static_cast<std::size_t>(j));
        sq += std::max(f0 * f0, f1 * f1);
    }
    return sq;
}
}  // namespace detail

// Worst-case average transmit power versus the budget P. Combines the
// analytic extreme points with a 1000-point random theta grid.
inline PowerAudit check_power(const ChannelSpec& chan, const ModelSpec& model,
                              const AffineEncoder& encoder, int repetitions = 1,
                              std::uint64_t grid_seed = 0x7a0d1u) {
    const double per_block = static_cast<double>(repetitions) / static_cast<double>(chan.s);
    double worst = std::visit([&](const auto& m) { return detail::worst_block_power(m, encoder); }, model);
    Rng rng(Rng::mix(grid_seed));
    for (int k = 0; k < 1000; ++k) {
        const Theta theta = sample_theta_uniform(model, rng);
        worst = std::max(worst, expected_block_power(model, encoder, theta));
    }
    PowerAudit audit;
    audit.worst_average_power = per_block * worst;
    audit.budget = chan.power_p;
    audit.passes = audit.worst_average_power <= chan.power_p * (1.0 + 1e-9);
    return audit;
}

inline PowerAudit check_power(const Scheme& scheme) {
    return check_power(scheme.channel, scheme.model, scheme.encoder, scheme.repetitions);
}

// --- model-generic construction ----------------------------------------------------

inline Scheme minimax_scheme(const ModelSpec& model, const ChannelSpec& chan,
                             RegimeRule rule = RegimeRule::printed_label) {
    if (const auto* g = std::get_if<GaussianLocationModel>(&model)) return gaussian_minimax_scheme(*g, chan);
    return bernoulli_minimax_scheme(std::get<ProductBernoulliModel>(model), chan, rule);
}

inline double minimax_risk(const ModelSpec& model, const ChannelSpec& chan,
                           RegimeRule rule = RegimeRule::printed_label) {
    if (const auto* g = std::get_if<GaussianLocationModel>(&model)) return gaussian_minimax_risk(*g, chan);
    return bernoulli_minimax_risk(std::get<ProductBernoulliModel>(model), chan, rule);
}

}  // namespace otae
