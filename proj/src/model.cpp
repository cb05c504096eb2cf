#include "qjump/model.hpp"

#include <cmath>

namespace qjump {

StateVector ket0() { return StateVector::Unit(kIdx0); }
StateVector ket_minus() { return StateVector::Unit(kIdxMinus); }
StateVector ket_plus() { return StateVector::Unit(kIdxPlus); }

ComplexMatrix hamiltonian_jump(const JumpParams& p) {
    ComplexMatrix h = ComplexMatrix::Zero();
    const double c = p.omega * std::cos(p.theta);
    const double s = -p.omega * std::sin(p.theta);
    h(kIdx0, kIdxPlus) = c;
    h(kIdxPlus, kIdx0) = c;
    h(kIdx0, kIdxMinus) = s;
    h(kIdxMinus, kIdx0) = s;
    h(kIdxMinus, kIdxMinus) = p.delta;
    h(kIdxPlus, kIdxPlus) = -p.delta;
    return h;
}

StateVector dark_state(double theta) {
    StateVector d = StateVector::Zero();
    d(kIdxMinus) = std::cos(theta);
    d(kIdxPlus) = std::sin(theta);
    return d;
}

std::array<StateVector, 2> bright_states(double theta) {
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix rot = transport_rotation(theta);
    StateVector plus0 = StateVector::Zero();
    plus0(kIdx0) = r;
    plus0(kIdxPlus) = r;
    StateVector minus0 = StateVector::Zero();
    minus0(kIdx0) = -r;
    minus0(kIdxPlus) = r;
    return {rot * plus0, rot * minus0};
}

const ComplexMatrix& generator() {
    static const ComplexMatrix g = [] {
        ComplexMatrix m = ComplexMatrix::Zero();
        m(kIdxPlus, kIdxMinus) = Complex(0.0, 1.0);
        m(kIdxMinus, kIdxPlus) = Complex(0.0, -1.0);
        return m;
    }();
    return g;
}

ComplexMatrix transport_rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix r = ComplexMatrix::Identity();
    r(kIdxMinus, kIdxMinus) = c;
    r(kIdxMinus, kIdxPlus) = -s;
    r(kIdxPlus, kIdxMinus) = s;
    r(kIdxPlus, kIdxPlus) = c;
    return r;
}

ComplexMatrix conjugate_by_generator(double theta, double omega) {
    const ComplexMatrix rot = transport_rotation(theta);
    const ComplexMatrix h0 = hamiltonian_jump({omega, 0.0, 0.0});
    return rot * h0 * rot.adjoint();
}

ComplexMatrix eigenbasis(double theta) {
    const auto mu = bright_states(theta);
    ComplexMatrix b;
    b.col(0) = dark_state(theta);
    b.col(1) = mu[0];
    b.col(2) = mu[1];
    return b;
}

ComplexMatrix adiabatic_propagator(double theta_T, const std::array<double, 3>& phases) {
    const ComplexMatrix b0 = eigenbasis(0.0);
    const ComplexMatrix bt = eigenbasis(theta_T);
    ComplexMatrix u = ComplexMatrix::Zero();
    for (int n = 0; n < 3; ++n) {
        const Complex f(std::cos(phases[n]), -std::sin(phases[n]));
        u.noalias() += f * (bt.col(n) * b0.col(n).adjoint());
    }
    return u;
}

}  // namespace qjump
