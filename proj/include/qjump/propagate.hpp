#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qjump/linalg.hpp"
#include "qjump/schedules.hpp"

namespace qjump {

/// Thrown when halving the step changes the final state by more than the
/// tolerance; carries the measured max-abs amplitude difference.
struct NonConvergence : std::runtime_error {
    double difference;
    explicit NonConvergence(double d)
        : std::runtime_error("step-halving check failed (difference " +
                             std::to_string(d) + " > 1e-05)"),
          difference(d) {}
};

/// Thrown by adiabaticity_metric when two instantaneous eigenvalues are
/// closer than the resolvable gap.
struct DegenerateSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PopulationTrace {
    std::vector<double> times;                       // us, strictly increasing
    std::vector<std::array<double, 3>> populations;  // {p0, p_minus1, p_plus1}
};

struct PropagationResult {
    PopulationTrace trace;
    ComplexMatrix unitary;
    StateVector final_state;
};

/// Evolve psi0 through the piecewise-constant schedule at detuning delta.
/// Each dwell is exponentiated exactly; samples_per_segment subdivides each
/// dwell for the trace. Zero-length dwells contribute no samples.
PropagationResult propagate_piecewise(const JumpSchedule& s, double delta,
                                      const StateVector& psi0,
                                      int samples_per_segment = 1);

using HamiltonianFn = std::function<ComplexMatrix(double)>;

/// Product of exact exponentials of H sampled at interval midpoints
/// (second order in the step). dt is a target; the actual step divides
/// t1 - t0 exactly.
ComplexMatrix evolve_midpoint(const HamiltonianFn& h, double t0, double t1, double dt);

/// Evolve psi0 under the smooth two-pulse Hamiltonian with the midpoint
/// integrator at c.dt, sampling n_samples+1 points including both ends.
/// The run is repeated at dt/2; if the final states differ by more than
/// 1e-5 in any amplitude, NonConvergence is thrown rather than returning
/// a silently wrong answer. The returned result is from the dt run.
PropagationResult propagate_timedep(const StirapConfig& c, const StateVector& psi0,
                                    int n_samples = 100);

/// Splits the full evolution U(T) of a jump schedule into the ideal
/// adiabatic part and the residual: u_dia = u_adia^dagger u_total.
/// u_adia uses the geodesic-schedule phases (0, N pi, -N pi); for the
/// geodesic schedule itself u_dia is the identity to machine precision.
struct DiabaticCorrection {
    ComplexMatrix u_total;
    ComplexMatrix u_adia;
    ComplexMatrix u_dia;
    double deviation;  // max-abs entry of u_dia - I
};

DiabaticCorrection diabatic_correction(const JumpSchedule& s);

/// Independent route to the same residual: the theta-ordered exponential
///   Pexp[ i int_0^{pi/2} X(theta) dtheta ],
/// X(theta) = sum_{n != m} xi_nm(theta) <n(0)|G|m(0)> |n(0)><m(0)|
/// with xi_nm = exp(i (phi_n - phi_m)) built from the staircase dynamical
/// phases accumulated by the schedule up to theta. Discretized on n_grid
/// equal theta cells, each factor exponentiated exactly at the cell
/// midpoint; factors for later theta multiply on the left.
ComplexMatrix diabatic_correction_pathordered(const JumpSchedule& s, int n_grid);

/// Instantaneous adiabaticity matrix |<m|dH/dt|n>| / (E_n - E_m)^2 with a
/// central difference for dH/dt. Rows and columns follow ascending
/// eigenvalue order; the diagonal is zero. Values << 1 mean adiabatic.
/// Throws DegenerateSpectrum if any eigenvalue gap is below 1e-6.
RealMatrix adiabaticity_metric(const HamiltonianFn& h, double t, double dt_fd = 1e-6);

}  // namespace qjump
