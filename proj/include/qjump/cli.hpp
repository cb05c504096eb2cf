#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qjump/experiments.hpp"

namespace qjump {

/// Semantic configuration error; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string parameter;  // "time" (ns), "delta" (MHz) or "n"
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
};

struct OutputSpec {
    std::string path;
    std::string format = "csv";  // "csv" or "json"
};

/// One simulation request in user units: MHz and ns.
struct RunConfig {
    std::string protocol = "jump";
    int n_pulses = 4;
    double omega_mhz = 4.0;
    double total_time_ns = 500.0;
    double delta_mhz = 0.0;
    double dt_ns = 0.0;  // 0 picks the default step
    std::optional<SweepSpec> sweep;
    std::optional<OutputSpec> output;
    std::optional<std::uint64_t> seed;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
void validate(const RunConfig& cfg);

/// Convert the validated user-unit config to internal units.
RunSpec to_run_spec(const RunConfig& cfg);

SweepSpec parse_sweep(const std::string& text);

/// Run the sweep described by cfg.sweep; values stay in user units.
ScanResult run_sweep(const RunConfig& cfg);

/// Write the CSV files for one figure family ("fig2".."fig5" or "all")
/// into dir; returns the paths written.
std::vector<std::string> write_figures(const std::string& figure,
                                       const std::string& dir);

/// Built-in cross checks, one PASS/FAIL line each. True if all pass.
bool run_self_checks(std::ostream& out);

/// Command-line entry point; args exclude the program name.
/// Exit codes: 0 success, 1 check failure or internal error,
/// 2 configuration error, 3 integrator non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qjump
