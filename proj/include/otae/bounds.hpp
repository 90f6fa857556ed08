#pragma once

#include "otae/channel.hpp"
#include "otae/model.hpp"
#include "otae/scheme.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

namespace otae {

enum class BoundKind { digital, analog, general_mac };

struct BoundResult {
    double value = 0.0;
    BoundKind kind = BoundKind::analog;
    bool valid = true;
    std::string validity_note;
};

namespace detail {
inline void require_noisy(const ChannelSpec& chan, const char* who) {
    if (chan.noise_var == 0.0)
        throw std::domain_error(std::string(who) + ": noiseless channel has unbounded capacity");
}

inline double log_snr_term(const ChannelSpec& chan) {
    return std::log2(1.0 + static_cast<double>(chan.n) * chan.power_p / chan.noise_var);
}

// Bit-budget precondition of the digital bounds, keyed as printed on
// (s/n) log2(1 + nP/noise_var) < d, i.e. twice the per-sender bit budget.
inline void apply_digital_precondition(BoundResult& r, const ChannelSpec& chan, int d) {
    const double budget = static_cast<double>(chan.s) / static_cast<double>(chan.n) * log_snr_term(chan);
    r.valid = budget < static_cast<double>(d);
    std::ostringstream note;
    note << "bit budget (s/n) log2(1 + nP/noise_var) = " << budget << (r.valid ? " < d = " : " >= d = ") << d
         << " (condition keyed on twice the per-sender bit budget)";
    r.validity_note = note.str();
}
}  // namespace detail

// --- digital lower bounds -----------------------------------------------------

// Minimax risk floor for any scheme that quantizes samples to bits delivered
// errorlessly at the MAC sum capacity, Gaussian location model:
//   d sigma^2 / ((s/d) log2(1 + nP/noise_var) + pi^2 sigma^2 / B^2).
inline BoundResult digital_lb_gaussian(const GaussianLocationModel& model, const ChannelSpec& chan) {
    detail::require_noisy(chan, "digital_lb_gaussian");
    const double d = static_cast<double>(model.d);
    const double denom = static_cast<double>(chan.s) / d * detail::log_snr_term(chan) +
                         std::numbers::pi * std::numbers::pi * model.sample_var /
                             (model.radius_b * model.radius_b);
    BoundResult r{d * model.sample_var / denom, BoundKind::digital, true, {}};
    detail::apply_digital_precondition(r, chan, model.d);
    return r;
}

// Bernoulli counterpart:
//   d / ((s/d) (1/2 - 2 eps^2)^-2 log2(1 + nP/noise_var) + pi^2 / eps^2).
inline BoundResult digital_lb_bernoulli(const ProductBernoulliModel& model, const ChannelSpec& chan,
                                        double eps) {
    detail::require_noisy(chan, "digital_lb_bernoulli");
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("digital_lb_bernoulli: eps must be in (0, 1/2)");
    const double d = static_cast<double>(model.d);
    const double coef = 1.0 / ((0.5 - 2.0 * eps * eps) * (0.5 - 2.0 * eps * eps));
    const double denom = static_cast<double>(chan.s) / d * coef * detail::log_snr_term(chan) +
                         std::numbers::pi * std::numbers::pi / (eps * eps);
    BoundResult r{d / denom, BoundKind::digital, true, {}};
    detail::apply_digital_precondition(r, chan, model.d);
    return r;
}

inline BoundResult digital_lb_bernoulli(const ProductBernoulliModel& model, const ChannelSpec& chan) {
    return digital_lb_bernoulli(model, chan, model.epsilon);
}

// --- analog lower bounds ------------------------------------------------------

// Risk floor for ANY estimation scheme over the Gaussian MAC when the model's
// score is sub-Gaussian with parameter rho and [-B, B]^d fits inside the
// parameter space:
//   (d/n) / ((s/d) rho^2 log2(1 + nP/noise_var) + pi^2 / (n B^2)).
inline BoundResult analog_lb_general(int d, long n, long s, double power_p, double noise_var,
                                     double rho, double b) {
    if (noise_var == 0.0)
        throw std::domain_error("analog_lb_general: noiseless channel has unbounded capacity");
    if (!(rho > 0.0)) throw std::invalid_argument("analog_lb_general: rho must be > 0");
    if (!(b > 0.0)) throw std::invalid_argument("analog_lb_general: B must be > 0");
    const double dd = static_cast<double>(d);
    const double dn = static_cast<double>(n);
    const double log_term = std::log2(1.0 + dn * power_p / noise_var);
    const double denom = static_cast<double>(s) / dd * rho * rho * log_term +
                         std::numbers::pi * std::numbers::pi / (dn * b * b);
    return {dd / dn / denom, BoundKind::analog, true, {}};
}

// Gaussian location instance (rho = 1/sigma, B from the model).
inline BoundResult analog_lb_gaussian(const GaussianLocationModel& model, const ChannelSpec& chan) {
    return analog_lb_general(model.d, chan.n, chan.s, chan.power_p, chan.noise_var,
                             subgaussian_rho(model), model.radius_b);
}

// Dense product Bernoulli instance (rho = 1/(1/2 - 2 eps^2), B = eps after
// recentering the box at zero). For eps < 1/2 this is also a valid floor for
// the full [0,1]^d space.
inline BoundResult analog_lb_bernoulli(const ProductBernoulliModel& model, const ChannelSpec& chan,
                                       double eps) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("analog_lb_bernoulli: eps must be in (0, 1/2)");
    const double rho = 1.0 / (0.5 - 2.0 * eps * eps);
    return analog_lb_general(model.d, chan.n, chan.s, chan.power_p, chan.noise_var, rho, eps);
}

inline BoundResult analog_lb_bernoulli(const ProductBernoulliModel& model, const ChannelSpec& chan) {
    return analog_lb_bernoulli(model, chan, model.epsilon);
}

// Strengthened Bernoulli bounds: best value over a 99-point eps grid in (0, 1/2).
inline BoundResult digital_lb_bernoulli_best(const ProductBernoulliModel& model, const ChannelSpec& chan) {
    BoundResult best = digital_lb_bernoulli(model, chan, 0.005);
    for (int k = 2; k <= 99; ++k) {
        const BoundResult r = digital_lb_bernoulli(model, chan, 0.005 * k);
        if (r.value > best.value) best = r;
    }
    return best;
}

inline BoundResult analog_lb_bernoulli_best(const ProductBernoulliModel& model, const ChannelSpec& chan) {
    BoundResult best = analog_lb_bernoulli(model, chan, 0.005);
    for (int k = 2; k <= 99; ++k) {
        const BoundResult r = analog_lb_bernoulli(model, chan, 0.005 * k);
        if (r.value > best.value) best = r;
    }
    return best;
}

// Any memoryless MAC with bounded conditional density and sum capacity
// c_total bits per use:
//   (d/n) / (2 (s/d) rho^2 c_total + pi^2 / (n B^2)).
// At c_total = (1/2) log2(1 + nP/noise_var) this reproduces analog_lb_general.
inline BoundResult general_mac_lb(int d, long n, long s, double rho, double b, double c_total) {
    if (c_total < 0.0) throw std::invalid_argument("general_mac_lb: c_total must be >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("general_mac_lb: rho must be > 0");
    if (!(b > 0.0)) throw std::invalid_argument("general_mac_lb: B must be > 0");
    const double dd = static_cast<double>(d);
    const double dn = static_cast<double>(n);
    const double denom = 2.0 * static_cast<double>(s) / dd * rho * rho * c_total +
                         std::numbers::pi * std::numbers::pi / (dn * b * b);
    return {dd / dn / denom, BoundKind::general_mac, true, {}};
}

// Model-generic dispatch used by the reporting layer.
inline BoundResult analog_lb(const ModelSpec& model, const ChannelSpec& chan) {
    if (const auto* g = std::get_if<GaussianLocationModel>(&model)) return analog_lb_gaussian(*g, chan);
    return analog_lb_bernoulli(std::get<ProductBernoulliModel>(model), chan);
}

inline BoundResult digital_lb(const ModelSpec& model, const ChannelSpec& chan) {
    if (const auto* g = std::get_if<GaussianLocationModel>(&model)) return digital_lb_gaussian(*g, chan);
    return digital_lb_bernoulli(std::get<ProductBernoulliModel>(model), chan);
}

// --- achievability vs digital-bound crossover ------------------------------------

struct CrossoverPoint {
    long n = 0;
    double analog_risk = 0.0;
    double digital_bound = 0.0;
};

// First n in the sweep where the analog scheme's closed-form worst-case risk
// drops below a valid digital lower bound, i.e. where joint estimation over
// the channel provably beats every bits-over-capacity pipeline.
inline std::optional<CrossoverPoint> crossover_n(const ModelSpec& model, double power_p,
                                                 double noise_var, std::span<const long> n_values,
                                                 bool s_equals_d = true, long s_explicit = 0) {
    const int d = dimension(model);
    const long s = s_equals_d ? static_cast<long>(d) : s_explicit;
    for (long n : n_values) {
        const ChannelSpec chan(n, s, power_p, noise_var);
        const BoundResult digital = digital_lb(model, chan);
        if (!digital.valid) continue;
        const double analog = minimax_risk(model, chan);
        if (analog < digital.value) return CrossoverPoint{n, analog, digital.value};
    }
    return std::nullopt;
}

}  // namespace otae
