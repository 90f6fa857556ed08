#pragma once

#include "otae/channel.hpp"
#include "otae/model.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace otae {

enum class ModelKind { gaussian, bernoulli };
enum class Series { analog_sim, analog_formula, analog_lb, digital_lb };
enum class OutputFormat { csv, json };

inline const char* series_name(Series s) {
    switch (s) {
        case Series::analog_sim: return "analog_sim";
        case Series::analog_formula: return "analog_formula";
        case Series::analog_lb: return "analog_lb";
        case Series::digital_lb: return "digital_lb";
    }
    return "?";
}

// Parsed experiment description. Sections: [model], [channel], [run], [output].
struct ExperimentConfig {
    // model
    ModelKind kind = ModelKind::gaussian;
    std::vector<int> dims;
    double sample_var = 1.0;  // gaussian
    double radius_b = 1.0;    // gaussian
    double epsilon = 0.25;    // bernoulli
    bool full_space = true;   // bernoulli

    // channel
    double power_p = 1.0;
    double noise_var = 1.0;
    bool s_equals_d = true;
    long s_explicit = 0;
    std::vector<long> senders;

    // run
    long trials = 100;
    std::uint64_t seed = 1;
    bool uniform_theta = true;
    std::vector<double> fixed_theta;  // scalar broadcasts across coordinates
    int parallel_width = 0;           // 0: pick from hardware

    // output
    std::string out_path = "results";
    OutputFormat format = OutputFormat::csv;
    std::vector<Series> series = {Series::analog_sim, Series::analog_formula, Series::analog_lb,
                                  Series::digital_lb};

    std::string source_name = "<memory>";
    std::string source_text;

    long s_for(int d) const { return s_equals_d ? static_cast<long>(d) : s_explicit; }

    ModelSpec make_model(int d) const {
        if (kind == ModelKind::gaussian) return GaussianLocationModel(d, sample_var, radius_b);
        return ProductBernoulliModel(d, epsilon, full_space);
    }

    ChannelSpec make_channel(int d, long n) const { return ChannelSpec(n, s_for(d), power_p, noise_var); }

    Theta theta_for(int d) const {
        if (fixed_theta.size() == 1) return Theta(static_cast<std::size_t>(d), fixed_theta[0]);
        return fixed_theta;
    }
};

// Parse or validation failure; line == 0 marks a semantic (cross-key) problem.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& source, int line, const std::string& message)
        : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message
                                      : source + ": " + message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view piece =
            trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (!piece.empty()) parts.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return parts;
}

template <typename T>
inline T parse_number(const std::string& source, int line, std::string_view text) {
    const std::string s(trim(text));
    std::size_t used = 0;
    try {
        if constexpr (std::is_same_v<T, double>) {
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } else if constexpr (std::is_same_v<T, long>) {
            const long v = std::stol(s, &used);
            if (used == s.size()) return v;
        } else {
            const unsigned long long v = std::stoull(s, &used);
            if (used == s.size()) return static_cast<T>(v);
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(source, line, "cannot parse number '" + s + "'");
}

inline bool parse_bool(const std::string& source, int line, std::string_view text) {
    const std::string s(trim(text));
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ConfigError(source, line, "cannot parse boolean '" + s + "'");
}

}  // namespace detail

// Line-oriented parser for the flat key/section format. Unknown sections or
// keys are errors so typos surface with their line number.
inline ExperimentConfig parse_config_text(std::string_view text, const std::string& source_name) {
    ExperimentConfig cfg;
    cfg.source_name = source_name;
    cfg.source_text.assign(text);
    bool series_given = false;

    std::string section;
    int line_no = 0;
    std::istringstream stream{std::string(text)};
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(source_name, line_no, "unterminated section header");
            section.assign(detail::trim(line.substr(1, line.size() - 2)));
            if (section != "model" && section != "channel" && section != "run" && section != "output")
                throw ConfigError(source_name, line_no, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(source_name, line_no, "expected 'key = value'");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(source_name, line_no, "key '" + key + "' appears before any section");
        if (value.empty()) throw ConfigError(source_name, line_no, "empty value for '" + key + "'");

        if (section == "model") {
            if (key == "kind") {
                if (value == "gaussian") cfg.kind = ModelKind::gaussian;
                else if (value == "bernoulli") cfg.kind = ModelKind::bernoulli;
                else throw ConfigError(source_name, line_no, "kind must be gaussian or bernoulli");
            } else if (key == "d") {
                cfg.dims.clear();
                for (const auto& p : detail::split_list(value))
                    cfg.dims.push_back(static_cast<int>(detail::parse_number<long>(source_name, line_no, p)));
            } else if (key == "sample_var") {
                cfg.sample_var = detail::parse_number<double>(source_name, line_no, value);
            } else if (key == "radius_b") {
                cfg.radius_b = detail::parse_number<double>(source_name, line_no, value);
            } else if (key == "epsilon") {
                cfg.epsilon = detail::parse_number<double>(source_name, line_no, value);
            } else if (key == "full_space") {
                cfg.full_space = detail::parse_bool(source_name, line_no, value);
            } else {
                throw ConfigError(source_name, line_no, "unknown key '" + key + "' in [model]");
            }
        } else if (section == "channel") {
            if (key == "power_p") {
                cfg.power_p = detail::parse_number<double>(source_name, line_no, value);
            } else if (key == "noise_var") {
                cfg.noise_var = detail::parse_number<double>(source_name, line_no, value);
            } else if (key == "s") {
                if (value == "d") {
                    cfg.s_equals_d = true;
                } else {
                    cfg.s_equals_d = false;
                    cfg.s_explicit = detail::parse_number<long>(source_name, line_no, value);
                }
            } else if (key == "n") {
                cfg.senders.clear();
                for (const auto& p : detail::split_list(value))
                    cfg.senders.push_back(detail::parse_number<long>(source_name, line_no, p));
            } else {
                throw ConfigError(source_name, line_no, "unknown key '" + key + "' in [channel]");
            }
        } else if (section == "run") {
            if (key == "trials") {
                cfg.trials = detail::parse_number<long>(source_name, line_no, value);
            } else if (key == "seed") {
                cfg.seed = detail::parse_number<std::uint64_t>(source_name, line_no, value);
            } else if (key == "theta_mode") {
                if (value == "uniform") cfg.uniform_theta = true;
                else if (value == "fixed") cfg.uniform_theta = false;
                else throw ConfigError(source_name, line_no, "theta_mode must be uniform or fixed");
            } else if (key == "theta") {
                cfg.fixed_theta.clear();
                for (const auto& p : detail::split_list(value))
                    cfg.fixed_theta.push_back(detail::parse_number<double>(source_name, line_no, p));
            } else if (key == "parallel_width") {
                cfg.parallel_width =
                    static_cast<int>(detail::parse_number<long>(source_name, line_no, value));
            } else {
                throw ConfigError(source_name, line_no, "unknown key '" + key + "' in [run]");
            }
        } else {  // output
            if (key == "path") {
                cfg.out_path.assign(value);
            } else if (key == "format") {
                if (value == "csv") cfg.format = OutputFormat::csv;
                else if (value == "json") cfg.format = OutputFormat::json;
                else throw ConfigError(source_name, line_no, "format must be csv or json");
            } else if (key == "series") {
                cfg.series.clear();
                series_given = true;
                for (const auto& p : detail::split_list(value)) {
                    if (p == "analog_sim") cfg.series.push_back(Series::analog_sim);
                    else if (p == "analog_formula") cfg.series.push_back(Series::analog_formula);
                    else if (p == "analog_lb") cfg.series.push_back(Series::analog_lb);
                    else if (p == "digital_lb") cfg.series.push_back(Series::digital_lb);
                    else throw ConfigError(source_name, line_no, "unknown series '" + p + "'");
                }
            } else {
                throw ConfigError(source_name, line_no, "unknown key '" + key + "' in [output]");
            }
        }
    }
    if (series_given && cfg.series.empty())
        throw ConfigError(source_name, 0, "series list must not be empty");
    return cfg;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

// Cross-key validation; throws ConfigError with line 0 on failure.
inline void validate_config(const ExperimentConfig& cfg) {
    const auto fail = [&](const std::string& msg) { throw ConfigError(cfg.source_name, 0, msg); };
    if (cfg.dims.empty()) fail("[model] d list must not be empty");
    for (int d : cfg.dims)
        if (d < 1) fail("[model] d values must be >= 1");
    if (cfg.kind == ModelKind::gaussian) {
        if (!(cfg.sample_var > 0.0)) fail("[model] sample_var must be > 0");
        if (!(cfg.radius_b > 0.0)) fail("[model] radius_b must be > 0");
    } else {
        if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) fail("[model] epsilon must be in (0, 1/2)");
    }
    if (cfg.senders.empty()) fail("[channel] n list must not be empty");
    for (long n : cfg.senders)
        if (n < 1) fail("[channel] n values must be >= 1");
    if (!(cfg.power_p > 0.0)) fail("[channel] power_p must be > 0");
    if (cfg.noise_var < 0.0) fail("[channel] noise_var must be >= 0");
    if (cfg.trials < 1) fail("[run] trials must be >= 1");
    if (cfg.parallel_width < 0) fail("[run] parallel_width must be >= 0");

    const bool wants_scheme = std::find(cfg.series.begin(), cfg.series.end(), Series::analog_sim) !=
                                  cfg.series.end() ||
                              std::find(cfg.series.begin(), cfg.series.end(), Series::analog_formula) !=
                                  cfg.series.end();
    const bool wants_bounds = std::find(cfg.series.begin(), cfg.series.end(), Series::analog_lb) !=
                                  cfg.series.end() ||
                              std::find(cfg.series.begin(), cfg.series.end(), Series::digital_lb) !=
                                  cfg.series.end();
    if (wants_scheme) {
        for (int d : cfg.dims) {
            if (cfg.s_for(d) < d)
                fail("scheme series require s >= d; got s = " + std::to_string(cfg.s_for(d)) +
                     " for d = " + std::to_string(d));
        }
    }
    if (!cfg.s_equals_d && cfg.s_explicit < 1) fail("[channel] s must be >= 1 or 'd'");
    if (wants_bounds && !(cfg.noise_var > 0.0))
        fail("lower-bound series require noise_var > 0 (noiseless capacity is unbounded)");

    if (!cfg.uniform_theta) {
        if (cfg.fixed_theta.empty()) fail("[run] theta_mode = fixed requires a theta value");
        for (int d : cfg.dims) {
            if (cfg.fixed_theta.size() != 1 && static_cast<int>(cfg.fixed_theta.size()) != d)
                fail("[run] theta must be a scalar or have exactly d entries for every d");
            const Theta th = cfg.theta_for(d);
            if (!in_parameter_space(cfg.make_model(d), th))
                fail("[run] theta is outside the parameter space for d = " + std::to_string(d));
        }
    }
}

}  // namespace otae
