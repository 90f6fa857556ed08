// Command-line front end: run experiment configs into CSV/JSON data files,
// print achievability-versus-bound comparison tables, and validate configs.

#include "otae/otae.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<std::string> format;
};

otae::ExperimentConfig load(const std::string& path, const Overrides& ov) {
    otae::ExperimentConfig cfg = otae::parse_config_file(path);
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.format) cfg.format = (*ov.format == "json") ? otae::OutputFormat::json : otae::OutputFormat::csv;
    otae::validate_config(cfg);
    return cfg;
}

int run_verb(const std::string& path, const Overrides& ov, const std::string& out_dir) {
    const otae::ExperimentConfig cfg = load(path, ov);
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<otae::OutputRow> rows = otae::compute_rows(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const otae::RunArtifacts artifacts = otae::write_run_outputs(cfg, rows, out_dir, wall);
    std::cout << "wrote " << rows.size() << " rows to " << artifacts.data_path.string() << "\n"
              << "metadata in " << artifacts.meta_path.string() << "\n";
    return 0;
}

int compare_verb(const std::string& path, const Overrides& ov) {
    const otae::ExperimentConfig cfg = load(path, ov);
    std::cout << otae::compare_table(cfg);
    return 0;
}

int validate_verb(const std::string& path, const Overrides& ov) {
    load(path, ov);
    std::cout << path << ": ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimax estimation over a Gaussian multiple-access channel"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    Overrides ov;
    std::uint64_t seed_flag = 0;
    long trials_flag = 0;
    std::string format_flag;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("config", config_path, "experiment config file")->required();
        cmd->add_option("--seed", seed_flag, "override [run] seed");
        cmd->add_option("--trials", trials_flag, "override [run] trials");
        cmd->add_option("--format", format_flag, "override [output] format (csv|json)")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_out) cmd->add_option("--out-dir", out_dir, "directory for output files");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run the experiment and emit data files");
    add_common(run_cmd, true);
    CLI::App* compare_cmd = app.add_subcommand("compare", "print an achievability/bound table");
    add_common(compare_cmd, false);
    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and validate a config");
    add_common(validate_cmd, false);

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.got_subcommand(run_cmd)
                           ? run_cmd
                           : (app.got_subcommand(compare_cmd) ? compare_cmd : validate_cmd);
    if (active->count("--seed") > 0) ov.seed = seed_flag;
    if (active->count("--trials") > 0) ov.trials = trials_flag;
    if (active->count("--format") > 0) ov.format = format_flag;

    try {
        if (app.got_subcommand(run_cmd)) return run_verb(config_path, ov, out_dir);
        if (app.got_subcommand(compare_cmd)) return compare_verb(config_path, ov);
        return validate_verb(config_path, ov);
    } catch (const otae::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const otae::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitRuntimeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}
