#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qjump/model.hpp"
#include "qjump/units.hpp"
#include "test_util.hpp"

using namespace qjump;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
const double kOmega = mhz_to_angular(4.0);
}  // namespace

TEST_CASE("jump Hamiltonian couples the expected pairs") {
    SUBCASE("theta = 0 drives only |0> <-> |+1>") {
        const ComplexMatrix h = hamiltonian_jump({kOmega, 0.0, 0.0});
        CHECK(h(kIdx0, kIdxPlus) == Complex(kOmega));
        CHECK(h(kIdxPlus, kIdx0) == Complex(kOmega));
        CHECK(h(kIdx0, kIdxMinus) == Complex(0.0));
        CHECK(h(kIdxMinus, kIdxMinus) == Complex(0.0));
    }
    SUBCASE("theta = pi/2 drives only |0> <-> |-1> with flipped sign") {
        const ComplexMatrix h = hamiltonian_jump({kOmega, 0.5 * kPi, 0.0});
        CHECK(h(kIdx0, kIdxMinus).real() == doctest::Approx(-kOmega));
        CHECK(std::abs(h(kIdx0, kIdxPlus)) <= 1e-14 * kOmega);
    }
    SUBCASE("detuning sits on the ground-state diagonal") {
        const double delta = mhz_to_angular(2.0);
        const ComplexMatrix h = hamiltonian_jump({kOmega, 0.3, delta});
        CHECK(h(kIdx0, kIdx0) == Complex(0.0));
        CHECK(h(kIdxMinus, kIdxMinus) == Complex(delta));
        CHECK(h(kIdxPlus, kIdxPlus) == Complex(-delta));
    }
    SUBCASE("Hermitian for arbitrary angles") {
        CHECK(hermiticity_residual(hamiltonian_jump({kOmega, -2.7, 1.0})) == 0.0);
    }
}

TEST_CASE("dark state is annihilated at every angle") {
    for (int i = 0; i <= 60; ++i) {
        const double theta = 0.5 * kPi * i / 60.0;
        const StateVector d = dark_state(theta);
        CHECK((hamiltonian_jump({kOmega, theta, 0.0}) * d).norm() <= 1e-10 * kOmega);
        CHECK(d.norm() == doctest::Approx(1.0));
    }
    CHECK(dark_state(0.0)(kIdxMinus) == Complex(1.0));
    CHECK(dark_state(0.5 * kPi)(kIdxPlus).real() == doctest::Approx(1.0));
    const StateVector mid = dark_state(0.25 * kPi);
    CHECK(mid(kIdxMinus).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(mid(kIdxPlus).real() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("bright states are the plus and minus Omega eigenvectors") {
    const double r = std::sqrt(0.5);
    const auto at_zero = bright_states(0.0);
    CHECK(test::max_abs_diff(at_zero[0], StateVector(r, 0.0, r)) <= 1e-14);
    CHECK(test::max_abs_diff(at_zero[1], StateVector(-r, 0.0, r)) <= 1e-14);
    for (int i = 0; i <= 50; ++i) {
        const double theta = 0.5 * kPi * i / 50.0;
        const ComplexMatrix h = hamiltonian_jump({kOmega, theta, 0.0});
        const auto mu = bright_states(theta);
        CHECK((h * mu[0] - kOmega * mu[0]).norm() <= 1e-10 * kOmega);
        CHECK((h * mu[1] + kOmega * mu[1]).norm() <= 1e-10 * kOmega);
        CHECK(std::abs(mu[0].dot(mu[1])) <= 1e-12);
        CHECK(std::abs(mu[0].dot(dark_state(theta))) <= 1e-12);
    }
}

TEST_CASE("transport rotation carries the dark state along the path") {
    for (const double theta : {0.0, 0.3, 0.25 * kPi, 1.2, 0.5 * kPi}) {
        CHECK(test::max_abs_diff(
                  StateVector(transport_rotation(theta) * dark_state(0.0)),
                  dark_state(theta)) <= 1e-14);
    }
    // Closed-form rotation agrees with the exponential of the generator.
    for (const double theta : {-1.0, 0.4, 2.5}) {
        CHECK(test::max_abs_diff(transport_rotation(theta),
                                 expm_unitary(generator(), theta)) <= 1e-12);
    }
}

TEST_CASE("conjugating the initial Hamiltonian reproduces every angle") {
    for (int i = 0; i <= 100; ++i) {
        const double theta = 0.5 * kPi * i / 100.0;
        CHECK(test::max_abs_diff(conjugate_by_generator(theta, kOmega),
                                 hamiltonian_jump({kOmega, theta, 0.0})) <=
              1e-10 * kOmega);
    }
}

TEST_CASE("generator matrix elements in the frozen eigenbasis") {
    const ComplexMatrix b = eigenbasis(0.0);
    const ComplexMatrix a = b.adjoint() * generator() * b;
    const Complex expected(0.0, -std::sqrt(0.5));
    // Dark couples to each bright state with amplitude -i/sqrt(2); the
    // bright pair does not couple and the diagonal vanishes.
    CHECK(std::abs(a(0, 1) - expected) <= 1e-12);
    CHECK(std::abs(a(0, 2) - expected) <= 1e-12);
    CHECK(std::abs(a(1, 0) + expected) <= 1e-12);
    CHECK(std::abs(a(2, 0) + expected) <= 1e-12);
    CHECK(std::abs(a(1, 2)) <= 1e-12);
    CHECK(std::abs(a(2, 1)) <= 1e-12);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(a(n, n)) <= 1e-12);
}

TEST_CASE("finite differences of the eigenbasis recover the generator") {
    // i d/dtheta |n(theta)> = G |n(theta)> for all three columns.
    const double h = 1e-5;
    const ComplexMatrix fd = (eigenbasis(h) - eigenbasis(-h)) / (2.0 * h);
    const ComplexMatrix expected = Complex(0.0, -1.0) * (generator() * eigenbasis(0.0));
    CHECK(test::max_abs_diff(fd, expected) <= 1e-6);
}

TEST_CASE("adiabatic propagator applies the chosen phases") {
    const std::array<double, 3> phases{0.3, -1.1, 2.0};
    const ComplexMatrix u = adiabatic_propagator(0.5 * kPi, phases);
    CHECK(unitarity_defect(u) <= 1e-12);
    const ComplexMatrix b0 = eigenbasis(0.0);
    const ComplexMatrix bt = eigenbasis(0.5 * kPi);
    for (int n = 0; n < 3; ++n) {
        const Complex f(std::cos(phases[n]), -std::sin(phases[n]));
        CHECK(test::max_abs_diff(StateVector(u * b0.col(n)),
                                 StateVector(f * bt.col(n))) <= 1e-12);
    }
    CHECK(test::max_abs_diff(adiabatic_propagator(0.0, {0.0, 0.0, 0.0}),
                             ComplexMatrix::Identity()) <= 1e-12);
}
