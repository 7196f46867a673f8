#ifndef MUSKAT_EXPERIMENT_HPP
#define MUSKAT_EXPERIMENT_HPP

#include "muskat/dynamics.hpp"
#include "muskat/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace muskat {

struct ModeSpec {
    int k = 1;
    double amplitude = 0.0;
    double phase = 0.0; // q2 += amplitude * cos(k a + phase)
};

struct InitialSpec {
    enum class Kind { flat, single_mode, sum_of_modes, from_file };
    Kind kind = Kind::flat;
    std::vector<ModeSpec> modes;
    std::string path;
};

struct ExperimentSpec {
    SimConfig sim;
    InitialSpec initial;
    FluidParams params;
    std::string output_dir = "out";
    std::uint64_t seed = 0; // consumed only by randomized property sweeps
};

/// Parses and fully validates a spec; unknown keys, odd n and out-of-range
/// values are rejected with the offending field named. All defaults are
/// materialized.
ExperimentSpec load_spec(const std::filesystem::path& path);
ExperimentSpec parse_spec(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentSpec& spec);

/// Constructs the initial interface from the descriptor (graph curves:
/// q1 = 0 except when reloaded from file).
Curve build_initial(const InitialSpec& init, int n);

struct ExecResult {
    int status = 0;
    std::filesystem::path dir;
    std::string message;
};

/// Runs the experiment and writes resolved-config.json, snapshots/,
/// diagnostics.csv, summary.json and manifest.json into the output
/// directory. Failures produce a nonzero status and a summary.json
/// describing the failure.
ExecResult execute(const ExperimentSpec& spec);

/// Post-processes a completed run directory into plot-ready long-format
/// CSVs: one t-vs-value file per diagnostic, one alpha-vs-z2 file per
/// snapshot, plus a hashed manifest. Missing inputs are named explicitly.
void emit_plot_data(const std::filesystem::path& run_dir);

} // namespace muskat

#endif
