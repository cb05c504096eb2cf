#include "qjump/experiments.hpp"

#include <cmath>
#include <random>

#include "qjump/model.hpp"
#include "qjump/units.hpp"

namespace qjump {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

ComplexMatrix pi_pulse_unitary(PiPulse mode, double omega_pi) {
    if (mode == PiPulse::ideal) {
        ComplexMatrix swap = ComplexMatrix::Zero();
        swap(kIdx0, kIdxMinus) = 1.0;
        swap(kIdxMinus, kIdx0) = 1.0;
        swap(kIdxPlus, kIdxPlus) = 1.0;
        return swap;
    }
    if (!(omega_pi > 0.0)) throw std::invalid_argument("omega_pi must be positive");
    ComplexMatrix h = ComplexMatrix::Zero();
    h(kIdx0, kIdxMinus) = 0.5 * omega_pi;
    h(kIdxMinus, kIdx0) = 0.5 * omega_pi;
    return expm_unitary(h, kPi / omega_pi);
}

// Deterministic standard normal: Box-Muller over the top 53 bits of the
// engine output. std::normal_distribution would not be bit-stable across
// standard libraries, which would break the seed reproducibility contract.
double standard_normal(std::mt19937_64& rng) {
    const double u1 =
        (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace

StirapConfig to_stirap_config(const RunSpec& spec) {
    StirapConfig c = stirap_defaults(spec.omega, spec.total_time, spec.delta);
    if (spec.dt > 0.0) c.dt = spec.dt;
    return c;
}

double transfer_efficiency_jump(int n_pulses, double omega, double total_time,
                                double delta) {
    if (total_time == 0.0) return 0.0;
    const JumpSchedule s = stretch_schedule(make_jump_schedule(n_pulses, omega), total_time);
    const auto r = propagate_piecewise(s, delta, ket_minus(), 1);
    return std::norm(r.final_state(kIdxPlus));
}

double transfer_efficiency_stirap(const StirapConfig& c) {
    const auto r = propagate_timedep(c, ket_minus(), 0);
    return std::norm(r.final_state(kIdxPlus));
}

double transfer_efficiency(const RunSpec& spec) {
    if (spec.total_time == 0.0) return 0.0;
    if (spec.protocol == Protocol::jump)
        return transfer_efficiency_jump(spec.n_pulses, spec.omega, spec.total_time,
                                        spec.delta);
    return transfer_efficiency_stirap(to_stirap_config(spec));
}

PropagationResult run_protocol(const RunSpec& spec, int n_samples) {
    if (!(spec.total_time > 0.0))
        throw std::invalid_argument("total_time must be positive");
    if (spec.protocol == Protocol::jump) {
        const JumpSchedule s =
            stretch_schedule(make_jump_schedule(spec.n_pulses, spec.omega), spec.total_time);
        const int per_segment =
            std::max(1, (n_samples + spec.n_pulses - 1) / spec.n_pulses);
        return propagate_piecewise(s, spec.delta, ket_minus(), per_segment);
    }
    return propagate_timedep(to_stirap_config(spec), ket_minus(), n_samples);
}

ScanResult sweep_time_jump(int n_pulses, double omega,
                           const std::vector<double>& total_times) {
    ScanResult out;
    out.parameter = "time";
    out.values = total_times;
    out.efficiencies.reserve(total_times.size());
    for (const double t : total_times)
        out.efficiencies.push_back(transfer_efficiency_jump(n_pulses, omega, t));
    return out;
}

ScanResult scan_detuning(const RunSpec& spec, const std::vector<double>& deltas) {
    ScanResult out;
    out.parameter = "delta";
    out.values = deltas;
    out.efficiencies.reserve(deltas.size());
    RunSpec point = spec;
    for (const double d : deltas) {
        point.delta = d;
        out.efficiencies.push_back(transfer_efficiency(point));
    }
    return out;
}

ReadoutResult emulate_readout(const RunSpec& spec, PiPulse mode, double omega_pi) {
    const ComplexMatrix u_pi = pi_pulse_unitary(mode, omega_pi);
    const ComplexMatrix u_protocol = run_protocol(spec, 0).unitary;
    const StateVector after = u_protocol * (u_pi * ket0());
    ReadoutResult out;
    out.part1_p0 = std::norm(after(kIdx0));
    out.part2_p0 = std::norm((u_pi * after)(kIdx0));
    out.inferred = {out.part1_p0, out.part2_p0,
                    1.0 - out.part1_p0 - out.part2_p0};
    return out;
}

NoiseEstimate monte_carlo_static_noise(const RunSpec& spec, double sigma_delta,
                                       int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (sigma_delta < 0.0) throw std::invalid_argument("sigma_delta must be >= 0");
    std::mt19937_64 rng(seed);
    RunSpec point = spec;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        point.delta = spec.delta + sigma_delta * standard_normal(rng);
        const double eff = transfer_efficiency(point);
        sum += eff;
        sum_sq += eff * eff;
    }
    NoiseEstimate out;
    out.n_samples = n_samples;
    out.mean = sum / n_samples;
    out.stddev = n_samples > 1
                     ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n_samples) /
                                                   (n_samples - 1)))
                     : 0.0;
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(a);
        return out;
    }
    for (int i = 0; i < n; ++i)
        out.push_back(a + (b - a) * static_cast<double>(i) / (n - 1));
    return out;
}

}  // namespace qjump
