#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qjump/linalg.hpp"

namespace qjump {

struct InvalidPulseCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Piecewise-constant jump protocol: dwell at each theta for the paired tau.
struct JumpSchedule {
    double omega = 0.0;          // rad/us
    std::vector<double> thetas;  // ascending mixing angles, rad
    std::vector<double> taus;    // dwell times, us

    int n_pulses() const { return static_cast<int>(thetas.size()); }
    double total_time() const;
};

/// The geodesic schedule: theta_j = (2j-1) pi / (4N), j = 1..N, each dwell
/// tau = pi / omega. Total time N pi / omega.
JumpSchedule make_jump_schedule(int n_pulses, double omega);

/// Same angles, dwell times scaled uniformly so the total equals total_time.
/// total_time = 0 gives a zero-duration schedule.
JumpSchedule stretch_schedule(const JumpSchedule& s, double total_time);

/// Prefix sums of the dwell times; size n_pulses + 1, front 0, back total.
std::vector<double> cumulative_dwell(const JumpSchedule& s);

/// Staircase sign F(theta) = (-1)^j on [theta_j, theta_{j+1}) with theta_0 = 0.
/// For the geodesic angles the signed integral over [0, pi/2] vanishes
/// exactly; integral_quarter_units() evaluates it in integer units of
/// pi / (4N) so the cancellation is exact, not approximate.
class SignFunction {
  public:
    explicit SignFunction(const JumpSchedule& s);

    int operator()(double theta) const;
    long long integral_quarter_units() const;
    const std::vector<double>& boundaries() const { return boundaries_; }

  private:
    std::vector<double> boundaries_;
};

/// Counterintuitive-ordered Gaussian pair driving the Lambda system.
/// All rates rad/us, all times us.
struct StirapConfig {
    double omega = 0.0;       // peak/2 of each envelope
    double total_time = 0.0;  // T
    double delay = 0.0;       // peak offset from T/2 (Stokes early, pump late)
    double width = 0.0;       // Gaussian width sigma
    double delta = 0.0;       // two-photon detuning
    double dt = 0.0;          // integrator step
};

/// delay = T/10, width = T/6, dt = T/2000.
StirapConfig stirap_defaults(double omega, double total_time, double delta = 0.0);

/// (pump, Stokes) amplitudes at time t:
///   Omega_S(t) = 2 omega exp(-((t - T/2 + delay) / width)^2)   (peaks first)
///   Omega_P(t) = Omega_S(T - t)                                 (mirror)
/// Throws TimeOutOfRange outside [0, T].
std::pair<double, double> stirap_envelopes(const StirapConfig& c, double t);

/// H(t) = Omega_P(t)/2 (|0><-1| + h.c.) + Omega_S(t)/2 (|0><+1| + h.c.)
///        + delta (|-1><-1| - |+1><+1|).
ComplexMatrix hamiltonian_stirap(const StirapConfig& c, double t);

}  // namespace qjump
