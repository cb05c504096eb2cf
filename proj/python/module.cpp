#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qjump/cli.hpp"
#include "qjump/experiments.hpp"
#include "qjump/io.hpp"
#include "qjump/model.hpp"
#include "qjump/propagate.hpp"
#include "qjump/schedules.hpp"
#include "qjump/units.hpp"

namespace py = pybind11;

PYBIND11_MODULE(qjump, m) {
    m.doc() = "Accelerated adiabatic population transfer in a three-level "
              "Lambda system: piecewise jump protocol, smooth two-pulse "
              "baseline, and the diagnostics connecting them. Angular "
              "frequencies in rad/us, times in us.";

    py::register_exception<qjump::NotHermitian>(m, "NotHermitian");
    py::register_exception<qjump::NonConvergence>(m, "NonConvergence");
    py::register_exception<qjump::DegenerateSpectrum>(m, "DegenerateSpectrum");
    py::register_exception<qjump::InvalidPulseCount>(m, "InvalidPulseCount");
    py::register_exception<qjump::TimeOutOfRange>(m, "TimeOutOfRange");

    m.def("mhz_to_angular", &qjump::mhz_to_angular, py::arg("mhz"));
    m.def("angular_to_mhz", &qjump::angular_to_mhz, py::arg("omega"));
    m.def("ns_to_us", &qjump::ns_to_us, py::arg("ns"));
    m.def("us_to_ns", &qjump::us_to_ns, py::arg("us"));

    m.def(
        "hamiltonian_jump",
        [](double omega, double theta, double delta) {
            return qjump::hamiltonian_jump({omega, theta, delta});
        },
        py::arg("omega"), py::arg("theta"), py::arg("delta") = 0.0,
        "Piecewise-protocol Hamiltonian at mixing angle theta.");
    m.def("dark_state", &qjump::dark_state, py::arg("theta"),
          "Zero-eigenvalue state cos(theta)|-1> + sin(theta)|+1>.");
    m.def("bright_states", &qjump::bright_states, py::arg("theta"),
          "Eigenvectors at +Omega and -Omega, in that order.");
    m.def("generator", &qjump::generator,
          py::return_value_policy::copy,
          "Transport generator G: exp(-i G theta) carries d(0) to d(theta).");
    m.def("transport_rotation", &qjump::transport_rotation, py::arg("theta"));
    m.def("conjugate_by_generator", &qjump::conjugate_by_generator,
          py::arg("theta"), py::arg("omega"));
    m.def("eigenbasis", &qjump::eigenbasis, py::arg("theta"),
          "Columns (dark, bright+, bright-).");
    m.def("adiabatic_propagator", &qjump::adiabatic_propagator, py::arg("theta_t"),
          py::arg("phases"),
          "Ideal adiabatic map with dynamical phases (dark, bright+, bright-).");

    m.def(
        "eig_hermitian",
        [](const qjump::ComplexMatrix& h) {
            const auto sp = qjump::eig_hermitian(h);
            return std::make_pair(sp.values, sp.vectors);
        },
        py::arg("h"),
        "(eigenvalues ascending, eigenvector columns); deterministic phases.");
    m.def("expm_unitary", &qjump::expm_unitary, py::arg("h"), py::arg("t"),
          "exp(-i H t) for Hermitian H.");

    py::class_<qjump::JumpSchedule>(m, "JumpSchedule")
        .def(py::init<>())
        .def_readwrite("omega", &qjump::JumpSchedule::omega)
        .def_readwrite("thetas", &qjump::JumpSchedule::thetas)
        .def_readwrite("taus", &qjump::JumpSchedule::taus)
        .def_property_readonly("n_pulses", &qjump::JumpSchedule::n_pulses)
        .def_property_readonly("total_time", &qjump::JumpSchedule::total_time);
    m.def("make_jump_schedule", &qjump::make_jump_schedule, py::arg("n_pulses"),
          py::arg("omega"),
          "Geodesic schedule: theta_j = (2j-1) pi / (4N), tau = pi / omega.");
    m.def("stretch_schedule", &qjump::stretch_schedule, py::arg("schedule"),
          py::arg("total_time"));

    py::class_<qjump::StirapConfig>(m, "StirapConfig")
        .def(py::init<>())
        .def_readwrite("omega", &qjump::StirapConfig::omega)
        .def_readwrite("total_time", &qjump::StirapConfig::total_time)
        .def_readwrite("delay", &qjump::StirapConfig::delay)
        .def_readwrite("width", &qjump::StirapConfig::width)
        .def_readwrite("delta", &qjump::StirapConfig::delta)
        .def_readwrite("dt", &qjump::StirapConfig::dt);
    m.def("stirap_defaults", &qjump::stirap_defaults, py::arg("omega"),
          py::arg("total_time"), py::arg("delta") = 0.0);
    m.def("stirap_envelopes", &qjump::stirap_envelopes, py::arg("config"),
          py::arg("t"), "(pump, Stokes) amplitudes at t.");
    m.def("hamiltonian_stirap", &qjump::hamiltonian_stirap, py::arg("config"),
          py::arg("t"));

    py::class_<qjump::PopulationTrace>(m, "PopulationTrace")
        .def_readonly("times", &qjump::PopulationTrace::times)
        .def_readonly("populations", &qjump::PopulationTrace::populations);
    py::class_<qjump::PropagationResult>(m, "PropagationResult")
        .def_readonly("trace", &qjump::PropagationResult::trace)
        .def_readonly("unitary", &qjump::PropagationResult::unitary)
        .def_readonly("final_state", &qjump::PropagationResult::final_state);
    m.def("propagate_piecewise", &qjump::propagate_piecewise, py::arg("schedule"),
          py::arg("delta"), py::arg("psi0"), py::arg("samples_per_segment") = 1);
    m.def("propagate_timedep", &qjump::propagate_timedep, py::arg("config"),
          py::arg("psi0"), py::arg("n_samples") = 100);
    m.def("evolve_midpoint", &qjump::evolve_midpoint, py::arg("h"), py::arg("t0"),
          py::arg("t1"), py::arg("dt"),
          "Midpoint-rule product of exact exponentials of h(t).");

    py::class_<qjump::DiabaticCorrection>(m, "DiabaticCorrection")
        .def_readonly("u_total", &qjump::DiabaticCorrection::u_total)
        .def_readonly("u_adia", &qjump::DiabaticCorrection::u_adia)
        .def_readonly("u_dia", &qjump::DiabaticCorrection::u_dia)
        .def_readonly("deviation", &qjump::DiabaticCorrection::deviation);
    m.def("diabatic_correction", &qjump::diabatic_correction, py::arg("schedule"),
          "Split U(T) into the ideal adiabatic part and the residual.");
    m.def("diabatic_correction_pathordered", &qjump::diabatic_correction_pathordered,
          py::arg("schedule"), py::arg("n_grid"),
          "Residual via the theta-ordered exponential on an n_grid mesh.");
    m.def("adiabaticity_metric", &qjump::adiabaticity_metric, py::arg("h"),
          py::arg("t"), py::arg("dt_fd") = 1e-6,
          "|<m|dH/dt|n>| / (E_n - E_m)^2 in the instantaneous eigenbasis.");

    py::enum_<qjump::Protocol>(m, "Protocol")
        .value("jump", qjump::Protocol::jump)
        .value("stirap", qjump::Protocol::stirap);
    py::class_<qjump::RunSpec>(m, "RunSpec")
        .def(py::init<>())
        .def_readwrite("protocol", &qjump::RunSpec::protocol)
        .def_readwrite("n_pulses", &qjump::RunSpec::n_pulses)
        .def_readwrite("omega", &qjump::RunSpec::omega)
        .def_readwrite("total_time", &qjump::RunSpec::total_time)
        .def_readwrite("delta", &qjump::RunSpec::delta)
        .def_readwrite("dt", &qjump::RunSpec::dt);
    py::class_<qjump::ScanResult>(m, "ScanResult")
        .def_readonly("parameter", &qjump::ScanResult::parameter)
        .def_readonly("values", &qjump::ScanResult::values)
        .def_readonly("efficiencies", &qjump::ScanResult::efficiencies);

    m.def("transfer_efficiency_jump", &qjump::transfer_efficiency_jump,
          py::arg("n_pulses"), py::arg("omega"), py::arg("total_time"),
          py::arg("delta") = 0.0);
    m.def("transfer_efficiency_stirap", &qjump::transfer_efficiency_stirap,
          py::arg("config"));
    m.def("transfer_efficiency", &qjump::transfer_efficiency, py::arg("spec"));
    m.def("run_protocol", &qjump::run_protocol, py::arg("spec"),
          py::arg("n_samples") = 100, "Full trace of one run from |-1>.");
    m.def("sweep_time_jump", &qjump::sweep_time_jump, py::arg("n_pulses"),
          py::arg("omega"), py::arg("total_times"));
    m.def("scan_detuning", &qjump::scan_detuning, py::arg("spec"), py::arg("deltas"));

    py::enum_<qjump::PiPulse>(m, "PiPulse")
        .value("ideal", qjump::PiPulse::ideal)
        .value("finite", qjump::PiPulse::finite);
    py::class_<qjump::ReadoutResult>(m, "ReadoutResult")
        .def_readonly("part1_p0", &qjump::ReadoutResult::part1_p0)
        .def_readonly("part2_p0", &qjump::ReadoutResult::part2_p0)
        .def_readonly("inferred", &qjump::ReadoutResult::inferred);
    m.def("emulate_readout", &qjump::emulate_readout, py::arg("spec"),
          py::arg("mode") = qjump::PiPulse::ideal,
          py::arg("omega_pi") = 62.83185307179586,
          "Two-part pi-pulse population readout of one protocol run.");

    py::class_<qjump::NoiseEstimate>(m, "NoiseEstimate")
        .def_readonly("mean", &qjump::NoiseEstimate::mean)
        .def_readonly("stddev", &qjump::NoiseEstimate::stddev)
        .def_readonly("n_samples", &qjump::NoiseEstimate::n_samples);
    m.def("monte_carlo_static_noise", &qjump::monte_carlo_static_noise,
          py::arg("spec"), py::arg("sigma_delta"), py::arg("n_samples"),
          py::arg("seed"),
          "Efficiency statistics under static Gaussian detuning noise.");

    m.def("write_figures", &qjump::write_figures, py::arg("figure"), py::arg("dir"),
          "Write the CSV files for fig2..fig5 (or 'all'); returns the paths.");

    m.attr("__version__") = "1.0.0";
}
