#pragma once

#include "otae/rng.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace otae {

// Parameter vectors and samples are plain double vectors. Bernoulli samples
// hold exact 0.0 / 1.0 values so encoders can treat both models uniformly.
using Theta = std::vector<double>;
using Sample = std::vector<double>;

// Mean estimation for N(theta, sample_var * I_d), with the parameter space
// the l2 ball { ||theta||_2 <= radius_b * sqrt(d) }.
struct GaussianLocationModel {
    int d = 1;
    double sample_var = 1.0;  // sigma^2, known
    double radius_b = 1.0;    // B

    GaussianLocationModel(int dim, double var, double b) : d(dim), sample_var(var), radius_b(b) {
        if (d < 1) throw std::invalid_argument("GaussianLocationModel: d must be >= 1");
        if (!(sample_var > 0.0)) throw std::invalid_argument("GaussianLocationModel: sample_var must be > 0");
        if (!(radius_b > 0.0)) throw std::invalid_argument("GaussianLocationModel: radius_b must be > 0");
    }

    double theta_radius() const { return radius_b * std::sqrt(static_cast<double>(d)); }
};

// Mean estimation for d independent Bernoulli(theta_j) bits. full_space
// selects theta in [0,1]^d; otherwise theta lives in the dense box
// [1/2 - epsilon, 1/2 + epsilon]^d used by the lower bounds.
struct ProductBernoulliModel {
    int d = 1;
    double epsilon = 0.25;
    bool full_space = true;

    ProductBernoulliModel(int dim, double eps, bool full = true) : d(dim), epsilon(eps), full_space(full) {
        if (d < 1) throw std::invalid_argument("ProductBernoulliModel: d must be >= 1");
        if (!(epsilon > 0.0 && epsilon < 0.5))
            throw std::invalid_argument("ProductBernoulliModel: epsilon must be in (0, 1/2)");
    }

    double box_lo() const { return full_space ? 0.0 : 0.5 - epsilon; }
    double box_hi() const { return full_space ? 1.0 : 0.5 + epsilon; }
};

using ModelSpec = std::variant<GaussianLocationModel, ProductBernoulliModel>;

inline int dimension(const ModelSpec& model) {
    return std::visit([](const auto& m) { return m.d; }, model);
}

inline bool is_gaussian(const ModelSpec& model) {
    return std::holds_alternative<GaussianLocationModel>(model);
}

// --- parameter-space membership ------------------------------------------

inline bool in_parameter_space(const GaussianLocationModel& m, const Theta& theta) {
    if (static_cast<int>(theta.size()) != m.d) return false;
    double sq = 0.0;
    for (double t : theta) sq += t * t;
    // tiny tolerance so boundary points survive round-trips through sqrt
    return std::sqrt(sq) <= m.theta_radius() * (1.0 + 1e-12);
}

inline bool in_parameter_space(const ProductBernoulliModel& m, const Theta& theta) {
    if (static_cast<int>(theta.size()) != m.d) return false;
    for (double t : theta)
        if (t < m.box_lo() || t > m.box_hi()) return false;
    return true;
}

inline bool in_parameter_space(const ModelSpec& model, const Theta& theta) {
    return std::visit([&](const auto& m) { return in_parameter_space(m, theta); }, model);
}

inline void require_in_parameter_space(const ModelSpec& model, const Theta& theta) {
    if (!in_parameter_space(model, theta))
        throw std::domain_error("theta is outside the model's parameter space");
}

// --- sampling --------------------------------------------------------------

inline void sample_one(const GaussianLocationModel& m, const Theta& theta, Rng& rng, Sample& out) {
    const double sd = std::sqrt(m.sample_var);
    out.resize(static_cast<std::size_t>(m.d));
    for (int j = 0; j < m.d; ++j) out[static_cast<std::size_t>(j)] = theta[static_cast<std::size_t>(j)] + sd * rng.next_normal();
}

inline void sample_one(const ProductBernoulliModel& m, const Theta& theta, Rng& rng, Sample& out) {
    out.resize(static_cast<std::size_t>(m.d));
    for (int j = 0; j < m.d; ++j)
        out[static_cast<std::size_t>(j)] = rng.next_bernoulli(theta[static_cast<std::size_t>(j)]) ? 1.0 : 0.0;
}

inline void sample_one(const ModelSpec& model, const Theta& theta, Rng& rng, Sample& out) {
    std::visit([&](const auto& m) { sample_one(m, theta, rng, out); }, model);
}

// n independent draws from the model at theta; deterministic given the stream.
inline std::vector<Sample> sample(const ModelSpec& model, const Theta& theta, long n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    require_in_parameter_space(model, theta);
    std::vector<Sample> out(static_cast<std::size_t>(n));
    for (auto& u : out) sample_one(model, theta, rng, u);
    return out;
}

// --- score functions --------------------------------------------------------

// Gradient of the log-likelihood at theta, evaluated on one sample.
inline std::vector<double> score(const GaussianLocationModel& m, const Theta& theta, const Sample& u) {
    if (u.size() != theta.size() || static_cast<int>(u.size()) != m.d)
        throw std::invalid_argument("score: dimension mismatch");
    std::vector<double> s(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) s[j] = (u[j] - theta[j]) / m.sample_var;
    return s;
}

inline std::vector<double> score(const ProductBernoulliModel& m, const Theta& theta, const Sample& u) {
    if (u.size() != theta.size() || static_cast<int>(u.size()) != m.d)
        throw std::invalid_argument("score: dimension mismatch");
    std::vector<double> s(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (theta[j] <= 0.0 || theta[j] >= 1.0)
            throw std::domain_error("score: singular at theta_j in {0, 1}");
        s[j] = (u[j] != 0.0) ? 1.0 / theta[j] : -1.0 / (1.0 - theta[j]);
    }
    return s;
}

inline std::vector<double> score(const ModelSpec& model, const Theta& theta, const Sample& u) {
    return std::visit([&](const auto& m) { return score(m, theta, u); }, model);
}

// --- sub-Gaussian score parameter -------------------------------------------

// Sub-Gaussian parameter rho of <v, S_theta(U)> over unit vectors v: 1/sigma
// for the Gaussian location model, 1/(1/2 - 2 eps^2) for the dense Bernoulli box.
inline double subgaussian_rho(const GaussianLocationModel& m) { return 1.0 / std::sqrt(m.sample_var); }

inline double subgaussian_rho(const ProductBernoulliModel& m) {
    return 1.0 / (0.5 - 2.0 * m.epsilon * m.epsilon);
}

inline double subgaussian_rho(const ModelSpec& model) {
    return std::visit([](const auto& m) { return subgaussian_rho(m); }, model);
}

// --- uniform draws from the parameter space ---------------------------------

// Uniform over the l2 ball: isotropic direction times radius R * U^(1/d).
inline Theta sample_theta_uniform(const GaussianLocationModel& m, Rng& rng) {
    Theta theta(static_cast<std::size_t>(m.d));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto& t : theta) {
            t = rng.next_normal();
            norm_sq += t * t;
        }
    } while (norm_sq == 0.0);
    const double r = m.theta_radius() *
                     std::pow(rng.next_unit(), 1.0 / static_cast<double>(m.d)) / std::sqrt(norm_sq);
    for (auto& t : theta) t *= r;
    return theta;
}

inline Theta sample_theta_uniform(const ProductBernoulliModel& m, Rng& rng) {
    Theta theta(static_cast<std::size_t>(m.d));
    const double lo = m.box_lo();
    const double w = m.box_hi() - lo;
    for (auto& t : theta) t = lo + w * rng.next_unit();
    return theta;
}

inline Theta sample_theta_uniform(const ModelSpec& model, Rng& rng) {
    return std::visit([&](const auto& m) { return sample_theta_uniform(m, rng); }, model);
}

}  // namespace otae
