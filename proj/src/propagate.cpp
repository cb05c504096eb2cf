#include "qjump/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "qjump/model.hpp"

namespace qjump {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kConvergenceTol = 1e-5;
constexpr double kDegenerateGap = 1e-6;

std::array<double, 3> populations_of(const StateVector& psi) {
    return {std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))};
}

ComplexMatrix phased_unitary(const Spectral& sp, double t) {
    ComplexMatrix u = ComplexMatrix::Zero();
    for (int k = 0; k < 3; ++k) {
        const double ph = sp.values(k) * t;
        const Complex f(std::cos(ph), -std::sin(ph));
        u.noalias() += f * (sp.vectors.col(k) * sp.vectors.col(k).adjoint());
    }
    return u;
}

}  // namespace

PropagationResult propagate_piecewise(const JumpSchedule& s, double delta,
                                      const StateVector& psi0,
                                      int samples_per_segment) {
    if (samples_per_segment < 1)
        throw std::invalid_argument("samples_per_segment must be >= 1");
    PropagationResult out;
    out.trace.times.push_back(0.0);
    out.trace.populations.push_back(populations_of(psi0));
    ComplexMatrix u = ComplexMatrix::Identity();
    double t_start = 0.0;
    for (int i = 0; i < s.n_pulses(); ++i) {
        const double tau = s.taus[i];
        if (tau == 0.0) continue;
        const Spectral sp =
            eig_hermitian(hamiltonian_jump({s.omega, s.thetas[i], delta}));
        for (int k = 1; k <= samples_per_segment; ++k) {
            const double dt_k = tau * k / samples_per_segment;
            const StateVector psi = phased_unitary(sp, dt_k) * (u * psi0);
            out.trace.times.push_back(t_start + dt_k);
            out.trace.populations.push_back(populations_of(psi));
        }
        u = phased_unitary(sp, tau) * u;
        t_start += tau;
    }
    out.unitary = u;
    out.final_state = u * psi0;
    return out;
}

ComplexMatrix evolve_midpoint(const HamiltonianFn& h, double t0, double t1, double dt) {
    const double span = t1 - t0;
    if (span < 0.0) throw std::invalid_argument("t1 must be >= t0");
    if (span == 0.0) return ComplexMatrix::Identity();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const long long n = std::max<long long>(1, std::llround(span / dt));
    const double step = span / static_cast<double>(n);
    ComplexMatrix u = ComplexMatrix::Identity();
    for (long long k = 0; k < n; ++k) {
        const double tm = t0 + (static_cast<double>(k) + 0.5) * step;
        u = expm_unitary(h(tm), step) * u;
    }
    return u;
}

PropagationResult propagate_timedep(const StirapConfig& c, const StateVector& psi0,
                                    int n_samples) {
    if (n_samples < 0) throw std::invalid_argument("n_samples must be >= 0");
    if (!(c.total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
    if (!(c.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const long long n_steps =
        std::max<long long>(1, std::llround(c.total_time / c.dt));
    const double step = c.total_time / static_cast<double>(n_steps);
    const auto h = [&c](double t) { return hamiltonian_stirap(c, t); };

    PropagationResult out;
    out.trace.times.push_back(0.0);
    out.trace.populations.push_back(populations_of(psi0));
    ComplexMatrix u = ComplexMatrix::Identity();
    long long next_sample = 1;
    for (long long k = 0; k < n_steps; ++k) {
        const double tm = (static_cast<double>(k) + 0.5) * step;
        u = expm_unitary(h(tm), step) * u;
        while (next_sample <= n_samples &&
               k + 1 >= std::llround(static_cast<double>(next_sample) * n_steps /
                                     static_cast<double>(n_samples))) {
            const double t = (static_cast<double>(k) + 1.0) * step;
            if (t > out.trace.times.back()) {
                out.trace.times.push_back(t);
                out.trace.populations.push_back(populations_of(u * psi0));
            }
            ++next_sample;
        }
    }
    out.unitary = u;
    out.final_state = u * psi0;

    const ComplexMatrix u_half = evolve_midpoint(h, 0.0, c.total_time, 0.5 * step);
    const double diff = ((u_half - u) * psi0).cwiseAbs().maxCoeff();
    if (diff > kConvergenceTol) throw NonConvergence(diff);
    return out;
}

DiabaticCorrection diabatic_correction(const JumpSchedule& s) {
    DiabaticCorrection out;
    ComplexMatrix u = ComplexMatrix::Identity();
    for (int i = 0; i < s.n_pulses(); ++i)
        u = expm_unitary(hamiltonian_jump({s.omega, s.thetas[i], 0.0}), s.taus[i]) * u;
    out.u_total = u;
    const double n = static_cast<double>(s.n_pulses());
    out.u_adia = adiabatic_propagator(0.5 * kPi, {0.0, n * kPi, -n * kPi});
    out.u_dia = out.u_adia.adjoint() * out.u_total;
    out.deviation = max_abs(out.u_dia - ComplexMatrix::Identity());
    return out;
}

ComplexMatrix diabatic_correction_pathordered(const JumpSchedule& s, int n_grid) {
    if (n_grid < 1) throw std::invalid_argument("n_grid must be >= 1");
    const ComplexMatrix b0 = eigenbasis(0.0);
    const ComplexMatrix a = b0.adjoint() * generator() * b0;
    const RealVector energies(0.0, s.omega, -s.omega);
    const std::vector<double> cum = cumulative_dwell(s);

    const double dtheta = 0.5 * kPi / n_grid;
    ComplexMatrix u = ComplexMatrix::Identity();
    ComplexMatrix factor = ComplexMatrix::Identity();
    std::ptrdiff_t region = -1;
    for (int k = 0; k < n_grid; ++k) {
        const double theta_mid = (k + 0.5) * dtheta;
        const auto it =
            std::upper_bound(s.thetas.begin(), s.thetas.end(), theta_mid);
        const std::ptrdiff_t j = std::distance(s.thetas.begin(), it);
        if (j != region) {
            region = j;
            const RealVector phi = energies * cum[static_cast<size_t>(j)];
            ComplexMatrix x;
            for (int n = 0; n < 3; ++n)
                for (int m = 0; m < 3; ++m) {
                    const double d = phi(n) - phi(m);
                    x(n, m) = Complex(std::cos(d), std::sin(d)) * a(n, m);
                }
            const ComplexMatrix x_full = b0 * x * b0.adjoint();
            factor = expm_unitary(x_full, -dtheta);  // exp(+i X dtheta)
        }
        u = factor * u;
    }
    return u;
}

RealMatrix adiabaticity_metric(const HamiltonianFn& h, double t, double dt_fd) {
    if (!(dt_fd > 0.0)) throw std::invalid_argument("dt_fd must be positive");
    const ComplexMatrix hdot = (h(t + dt_fd) - h(t - dt_fd)) / (2.0 * dt_fd);
    const Spectral sp = eig_hermitian(h(t));
    for (int m = 0; m < 3; ++m)
        for (int n = m + 1; n < 3; ++n)
            if (std::abs(sp.values(n) - sp.values(m)) < kDegenerateGap)
                throw DegenerateSpectrum("eigenvalue gap below 1e-6 at t = " +
                                         std::to_string(t));
    RealMatrix metric = RealMatrix::Zero();
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
            if (n == m) continue;
            const double gap = sp.values(n) - sp.values(m);
            const Complex elem = sp.vectors.col(m).dot(hdot * sp.vectors.col(n));
            metric(m, n) = std::abs(elem) / (gap * gap);
        }
    return metric;
}

}  // namespace qjump
