#pragma once

#include "otae/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace otae {

// One emitted data point: a (grid point, series) pair.
struct OutputRow {
    std::string model;
    int d = 0;
    long n = 0;
    long s = 0;
    double power_p = 0.0;
    double noise_var = 0.0;
    Series series = Series::analog_formula;
    double value = 0.0;
    std::optional<double> std_error;  // only simulation rows carry one
    bool valid = true;
};

// Raised when a produced value is not finite; the CLI maps it to exit 3.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Full-precision decimal text for a double (17 significant digits).
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void require_finite_rows(std::span<const OutputRow> rows) {
    for (const auto& r : rows) {
        if (!std::isfinite(r.value) || (r.std_error && !std::isfinite(*r.std_error)))
            throw NumericError("non-finite value in series " + std::string(series_name(r.series)));
    }
}

inline std::string to_csv(std::span<const OutputRow> rows) {
    std::string out = "model,d,n,s,power_p,noise_var,series,value,std_error,valid\n";
    for (const auto& r : rows) {
        out += r.model;
        out += ',';
        out += std::to_string(r.d);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.s);
        out += ',';
        out += fmt17(r.power_p);
        out += ',';
        out += fmt17(r.noise_var);
        out += ',';
        out += series_name(r.series);
        out += ',';
        out += fmt17(r.value);
        out += ',';
        if (r.std_error) out += fmt17(*r.std_error);
        out += ',';
        out += r.valid ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline std::string to_json_rows(std::span<const OutputRow> rows) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += "  {\"model\":\"" + r.model + "\",\"d\":" + std::to_string(r.d) +
               ",\"n\":" + std::to_string(r.n) + ",\"s\":" + std::to_string(r.s) +
               ",\"power_p\":" + fmt17(r.power_p) + ",\"noise_var\":" + fmt17(r.noise_var) +
               ",\"series\":\"" + series_name(r.series) + "\",\"value\":" + fmt17(r.value) +
               ",\"std_error\":" + (r.std_error ? fmt17(*r.std_error) : std::string("null")) +
               ",\"valid\":" + (r.valid ? "true" : "false") + "}";
        if (i + 1 < rows.size()) out += ',';
        out += '\n';
    }
    out += "]\n";
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace otae
