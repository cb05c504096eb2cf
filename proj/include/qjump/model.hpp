#pragma once

#include <array>

#include "qjump/linalg.hpp"

// Three-level Lambda system in the basis {|0>, |-1>, |+1>}, indices 0, 1, 2.
// |0> is the optically excited state, |-1> and |+1> are the ground spin
// projections. All angular frequencies in rad/us.

namespace qjump {

inline constexpr int kIdx0 = 0;
inline constexpr int kIdxMinus = 1;
inline constexpr int kIdxPlus = 2;

StateVector ket0();
StateVector ket_minus();
StateVector ket_plus();

struct JumpParams {
    double omega;        // coupling strength Omega, rad/us
    double theta;        // mixing angle, rad
    double delta = 0.0;  // two-photon detuning, rad/us
};

/// H(theta) = Omega [cos(theta)|+1> - sin(theta)|-1>] <0| + h.c.
///            + delta (|-1><-1| - |+1><+1|).
/// Any real theta is accepted.
ComplexMatrix hamiltonian_jump(const JumpParams& p);

/// Zero eigenvector of the delta = 0 jump Hamiltonian:
/// |d(theta)> = cos(theta)|-1> + sin(theta)|+1>.
StateVector dark_state(double theta);

/// Eigenvectors with eigenvalues +Omega (first) and -Omega (second):
/// |mu_pm(theta)> = exp(-i G theta) (|+1> pm |0>)/sqrt(2).
std::array<StateVector, 2> bright_states(double theta);

/// Generator of the dark-state transport,
/// G = i|+1><-1| - i|-1><+1|.
/// Sign convention: exp(-i G theta)|-1> = cos(theta)|-1> + sin(theta)|+1>,
/// so exp(-i G theta) carries d(0) onto d(theta).
const ComplexMatrix& generator();

/// exp(-i G theta) in closed form (rotation in the {|-1>, |+1>} plane).
ComplexMatrix transport_rotation(double theta);

/// exp(-i G theta) H(0) exp(+i G theta) with H(0) the delta = 0 jump
/// Hamiltonian. Equals hamiltonian_jump({omega, theta, 0}) identically.
ComplexMatrix conjugate_by_generator(double theta, double omega);

/// Columns (d(theta), mu_+(theta), mu_-(theta)).
ComplexMatrix eigenbasis(double theta);

/// Ideal adiabatic propagator
///   sum_n exp(-i phase_n) |n(theta_T)><n(0)|
/// over n in (d, mu_+, mu_-); `phases` in that order.
ComplexMatrix adiabatic_propagator(double theta_T, const std::array<double, 3>& phases);

}  // namespace qjump
