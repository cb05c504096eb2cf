#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qjump/propagate.hpp"
#include "qjump/schedules.hpp"

// Protocol-level operations. All transfers start in |-1> and target |+1>;
// efficiency is the final |+1> population. Internal units throughout
// (rad/us, us); unit conversion is the caller's concern.

namespace qjump {

enum class Protocol { jump, stirap };

struct RunSpec {
    Protocol protocol = Protocol::jump;
    int n_pulses = 4;         // jump only
    double omega = 0.0;       // rad/us
    double total_time = 0.0;  // us
    double delta = 0.0;       // rad/us
    double dt = 0.0;          // stirap step; 0 picks total_time / 2000
};

struct ScanResult {
    std::string parameter;  // "time", "delta" or "n"
    std::vector<double> values;
    std::vector<double> efficiencies;
};

StirapConfig to_stirap_config(const RunSpec& spec);

/// Jump protocol stretched to total_time; exact piecewise evolution.
double transfer_efficiency_jump(int n_pulses, double omega, double total_time,
                                double delta = 0.0);

double transfer_efficiency_stirap(const StirapConfig& c);

/// Dispatch on spec.protocol. total_time = 0 returns 0.
double transfer_efficiency(const RunSpec& spec);

/// Full trace of one protocol run from |-1>, about n_samples+1 rows.
PropagationResult run_protocol(const RunSpec& spec, int n_samples = 100);

ScanResult sweep_time_jump(int n_pulses, double omega,
                           const std::vector<double>& total_times);

/// Efficiency versus detuning, spec.delta replaced by each entry.
ScanResult scan_detuning(const RunSpec& spec, const std::vector<double>& deltas);

enum class PiPulse { ideal, finite };

/// Two-part population readout built from pi pulses on |0> <-> |-1>:
/// part I measures P_0 after (pi, protocol); part II appends another pi
/// so its P_0 equals the protocol's P_-1. The third population follows
/// from normalization.
struct ReadoutResult {
    double part1_p0;
    double part2_p0;
    std::array<double, 3> inferred;  // {p0, p_minus1, p_plus1}
};

ReadoutResult emulate_readout(const RunSpec& spec, PiPulse mode = PiPulse::ideal,
                              double omega_pi = 62.83185307179586);

/// Efficiency statistics under static Gaussian detuning noise of width
/// sigma_delta around spec.delta. Fixed seed gives bit-identical results.
struct NoiseEstimate {
    double mean;
    double stddev;
    int n_samples;
};

NoiseEstimate monte_carlo_static_noise(const RunSpec& spec, double sigma_delta,
                                       int n_samples, std::uint64_t seed);

/// n >= 2: n evenly spaced points covering [a, b]; n == 1: just {a}.
std::vector<double> linspace(double a, double b, int n);

}  // namespace qjump
