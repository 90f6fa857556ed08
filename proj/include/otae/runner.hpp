#pragma once

#include "otae/bounds.hpp"
#include "otae/config.hpp"
#include "otae/monte_carlo.hpp"
#include "otae/report.hpp"
#include "otae/scheme.hpp"

#include <algorithm>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace otae {

inline constexpr const char* kToolVersion = "0.1.0";

inline int effective_parallel_width(const ExperimentConfig& cfg) {
    if (cfg.parallel_width > 0) return cfg.parallel_width;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Evaluates every requested series on the (d, n) grid. The CLI performs no
// arithmetic of its own: each row is one library call.
inline std::vector<OutputRow> compute_rows(const ExperimentConfig& cfg) {
    std::vector<OutputRow> rows;
    const char* model_name = cfg.kind == ModelKind::gaussian ? "gaussian" : "bernoulli";
    std::size_t cell_index = 0;
    for (int d : cfg.dims) {
        for (long n : cfg.senders) {
            const ModelSpec model = cfg.make_model(d);
            const ChannelSpec chan = cfg.make_channel(d, n);
            OutputRow base;
            base.model = model_name;
            base.d = d;
            base.n = n;
            base.s = chan.s;
            base.power_p = chan.power_p;
            base.noise_var = chan.noise_var;
            for (Series series : cfg.series) {
                OutputRow row = base;
                row.series = series;
                switch (series) {
                    case Series::analog_sim: {
                        TrialPlan plan;
                        plan.trials = cfg.trials;
                        plan.master_seed = cell_seed(cfg.seed, cell_index);
                        plan.parallel_width = effective_parallel_width(cfg);
                        if (!cfg.uniform_theta) plan.fixed_theta = cfg.theta_for(d);
                        const RiskResult r = estimate_risk(minimax_scheme(model, chan), plan);
                        row.value = r.mean_sq_error;
                        row.std_error = r.std_error;
                        break;
                    }
                    case Series::analog_formula:
                        row.value = minimax_risk(model, chan);
                        break;
                    case Series::analog_lb: {
                        const BoundResult b = analog_lb(model, chan);
                        row.value = b.value;
                        row.valid = b.valid;
                        break;
                    }
                    case Series::digital_lb: {
                        const BoundResult b = digital_lb(model, chan);
                        row.value = b.value;
                        row.valid = b.valid;
                        break;
                    }
                }
                rows.push_back(std::move(row));
            }
            ++cell_index;
        }
    }
    require_finite_rows(rows);
    return rows;
}

struct RunArtifacts {
    std::filesystem::path data_path;
    std::filesystem::path meta_path;
};

// Writes the data file plus a JSON sidecar echoing the configuration.
inline RunArtifacts write_run_outputs(const ExperimentConfig& cfg, std::span<const OutputRow> rows,
                                      const std::filesystem::path& out_dir, double wall_seconds) {
    std::filesystem::create_directories(out_dir);
    RunArtifacts artifacts;
    const bool csv = cfg.format == OutputFormat::csv;
    artifacts.data_path = out_dir / (cfg.out_path + (csv ? ".csv" : ".json"));
    artifacts.meta_path = out_dir / (cfg.out_path + ".meta.json");

    write_text_file(artifacts.data_path.string(), csv ? to_csv(rows) : to_json_rows(rows));

    nlohmann::json meta;
    meta["tool_version"] = kToolVersion;
    meta["config_source"] = cfg.source_name;
    meta["config_text"] = cfg.source_text;
    meta["seed"] = cfg.seed;
    meta["trials"] = cfg.trials;
    meta["parallel_width"] = effective_parallel_width(cfg);
    meta["rows"] = rows.size();
    meta["wall_time_seconds"] = wall_seconds;
    write_text_file(artifacts.meta_path.string(), meta.dump(2) + "\n");
    return artifacts;
}

// Side-by-side table of closed-form achievability against both lower bounds,
// one line per (d, n). Digital-bound entries whose bit-budget precondition
// fails are rendered as a marker instead of a number, and achievability /
// analog-bound ratios beyond 2 log2(1 + nP/noise_var) are flagged.
inline std::string compare_table(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "model      d        n  analog_formula       analog_lb      digital_lb   ach/analog_lb\n";
    const char* model_name = cfg.kind == ModelKind::gaussian ? "gaussian" : "bernoulli";
    for (int d : cfg.dims) {
        for (long n : cfg.senders) {
            const ModelSpec model = cfg.make_model(d);
            const ChannelSpec chan = cfg.make_channel(d, n);
            const double formula = minimax_risk(model, chan);
            const BoundResult alb = analog_lb(model, chan);
            const BoundResult dlb = digital_lb(model, chan);
            const double ratio = formula / alb.value;
            const double ratio_cap =
                2.0 * std::log2(1.0 + static_cast<double>(chan.n) * chan.power_p / chan.noise_var);

            char line[160];
            std::snprintf(line, sizeof(line), "%-9s %2d %8ld  %14.6g  %14.6g", model_name, d, n,
                          formula, alb.value);
            out << line;
            if (dlb.valid) {
                std::snprintf(line, sizeof(line), "  %14.6g", dlb.value);
            } else {
                std::snprintf(line, sizeof(line), "  %14s", "--");
            }
            out << line;
            std::snprintf(line, sizeof(line), "  %14.6g%s\n", ratio,
                          ratio > ratio_cap ? "  [gap>2log2(1+nP/noise)]" : "");
            out << line;
        }
    }
    return out.str();
}

}  // namespace otae
