#pragma once

#include "otae/channel.hpp"
#include "otae/model.hpp"
#include "otae/rng.hpp"
#include "otae/scheme.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace otae {

// One Monte Carlo campaign. Results are a pure function of (plan, scheme):
// trial i always consumes stream derive(master_seed, i), regardless of how
// many workers execute the trials.
struct TrialPlan {
    long trials = 100;
    std::optional<Theta> fixed_theta;  // nullopt: fresh uniform theta per trial
    std::uint64_t master_seed = 0;
    int parallel_width = 1;  // worker hint only; never affects the numbers
};

struct RiskResult {
    double mean_sq_error = 0.0;
    double std_error = 0.0;  // sample std of per-trial squared error / sqrt(T)
    long trials = 0;
    bool uniform_theta = false;
    bool degenerate = false;  // single trial: std_error reported as 0 by convention
};

// Exact fixed-order pairwise reduction; the result depends only on the
// element order, not on any thread schedule.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

// One realization of the full pipeline: draw n samples at theta, encode each,
// superpose through the channel with one noise realization, estimate, and
// return the squared estimation error.
inline double run_trial(const Scheme& scheme, const Theta& theta, Rng& rng) {
    require_in_parameter_space(scheme.model, theta);
    const std::size_t s = static_cast<std::size_t>(scheme.channel.s);
    std::vector<double> y(s, 0.0);
    std::vector<double> x(s);
    Sample u;
    for (long i = 0; i < scheme.channel.n; ++i) {
        sample_one(scheme.model, theta, rng, u);
        encode_into(scheme, u, x);
        for (std::size_t t = 0; t < s; ++t) y[t] += x[t];
    }
    add_noise(scheme.channel, y, rng);
    const Theta est = estimate(scheme, y);
    double err = 0.0;
    for (std::size_t j = 0; j < est.size(); ++j) {
        const double diff = est[j] - theta[j];
        err += diff * diff;
    }
    return err;
}

// Mean and standard error of the squared error over plan.trials independent
// trials. Uniform mode draws theta from the parameter space inside each
// trial's own stream, so the output is order- and parallelism-independent.
inline RiskResult estimate_risk(const Scheme& scheme, const TrialPlan& plan) {
    if (plan.trials < 1) throw std::invalid_argument("estimate_risk: trials must be >= 1");
    if (plan.parallel_width < 1) throw std::invalid_argument("estimate_risk: parallel_width must be >= 1");
    if (plan.fixed_theta) require_in_parameter_space(scheme.model, *plan.fixed_theta);

    const std::size_t trials = static_cast<std::size_t>(plan.trials);
    std::vector<double> errors(trials);

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = Rng::stream(plan.master_seed, i);
            if (plan.fixed_theta) {
                errors[i] = run_trial(scheme, *plan.fixed_theta, rng);
            } else {
                const Theta theta = sample_theta_uniform(scheme.model, rng);
                errors[i] = run_trial(scheme, theta, rng);
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t width = std::min<std::size_t>(
        trials, std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(plan.parallel_width), hw * 4)));
    if (width <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(width);
        const std::size_t chunk = (trials + width - 1) / width;
        for (std::size_t w = 0; w < width; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back(run_range, begin, end);
        }
        for (auto& t : workers) t.join();
    }

    RiskResult out;
    out.trials = plan.trials;
    out.uniform_theta = !plan.fixed_theta.has_value();
    out.mean_sq_error = pairwise_sum(errors) / static_cast<double>(trials);
    if (trials == 1) {
        out.std_error = 0.0;
        out.degenerate = true;
    } else {
        for (auto& e : errors) {
            const double c = e - out.mean_sq_error;
            e = c * c;
        }
        const double var = pairwise_sum(errors) / static_cast<double>(trials - 1);
        out.std_error = std::sqrt(var / static_cast<double>(trials));
    }
    return out;
}

// --- grid sweeps -----------------------------------------------------------------

struct SweepCell {
    int d = 0;
    long n = 0;
    RiskResult risk;
};

using SchemeFamily = std::function<Scheme(int d, long n)>;

// Master seed for one grid cell, derived so that cells never share trial
// streams with each other or with the top-level plan.
inline std::uint64_t cell_seed(std::uint64_t master, std::size_t cell_index) {
    return Rng::derive_seed(master, 0xce11u ^ static_cast<std::uint64_t>(cell_index));
}

// One RiskResult per (d, n) grid point, row-major over d then n. Each cell
// gets its own derived master seed, so the table is a pure function of
// plan.master_seed and the grid.
inline std::vector<SweepCell> sweep(const SchemeFamily& family, std::span<const int> d_values,
                                    std::span<const long> n_values, const TrialPlan& plan) {
    std::vector<SweepCell> cells;
    cells.reserve(d_values.size() * n_values.size());
    std::size_t cell_index = 0;
    for (int d : d_values) {
        for (long n : n_values) {
            TrialPlan cell_plan = plan;
            cell_plan.master_seed = cell_seed(plan.master_seed, cell_index);
            ++cell_index;
            cells.push_back({d, n, estimate_risk(family(d, n), cell_plan)});
        }
    }
    return cells;
}

}  // namespace otae
