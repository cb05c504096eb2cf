#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qjump {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix3cd;
using StateVector = Eigen::Vector3cd;
using RealVector = Eigen::Vector3d;
using RealMatrix = Eigen::Matrix3d;

/// Thrown by eig_hermitian / expm_unitary when the input fails the
/// Hermiticity check. Carries the measured max |H - H^dagger| entry.
struct NotHermitian : std::runtime_error {
    double residual;
    explicit NotHermitian(double r)
        : std::runtime_error("matrix is not Hermitian (residual " +
                             std::to_string(r) + ")"),
          residual(r) {}
};

/// Eigendecomposition of a Hermitian matrix: values ascending,
/// vectors[:,k] the unit eigenvector for values[k].
struct Spectral {
    RealVector values;
    ComplexMatrix vectors;
};

namespace detail {

template <int Dim>
using CMat = Eigen::Matrix<Complex, Dim, Dim>;
template <int Dim>
using RVec = Eigen::Matrix<double, Dim, 1>;

template <int Dim>
double hermiticity_residual(const CMat<Dim>& h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <int Dim>
void require_hermitian(const CMat<Dim>& h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double r = hermiticity_residual(h);
    if (r > 1e-12 * scale) throw NotHermitian(r);
}

// Deterministic phase fix: scale each column so its largest-magnitude
// component is real and nonnegative. Makes eigenvectors reproducible
// bit-for-bit across repeated calls.
template <int Dim>
void fix_phases(CMat<Dim>& vectors) {
    for (int k = 0; k < Dim; ++k) {
        int imax = 0;
        double best = std::norm(vectors(0, k));
        for (int i = 1; i < Dim; ++i) {
            const double m = std::norm(vectors(i, k));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        const Complex z = vectors(imax, k);
        const double a = std::abs(z);
        if (a > 0.0) vectors.col(k) *= std::conj(z) / a;
    }
}

template <int Dim>
std::pair<RVec<Dim>, CMat<Dim>> eig_hermitian_impl(const CMat<Dim>& h) {
    require_hermitian<Dim>(h);
    Eigen::SelfAdjointEigenSolver<CMat<Dim>> solver(h);
    CMat<Dim> v = solver.eigenvectors();
    fix_phases<Dim>(v);
    return {solver.eigenvalues(), v};
}

// exp(-i h t) for Hermitian h, via the eigendecomposition.
template <int Dim>
CMat<Dim> expm_unitary_impl(const CMat<Dim>& h, double t) {
    auto [values, vectors] = eig_hermitian_impl<Dim>(h);
    RVec<Dim> phase = values * t;
    CMat<Dim> u = CMat<Dim>::Zero();
    for (int k = 0; k < Dim; ++k) {
        const Complex f(std::cos(phase(k)), -std::sin(phase(k)));
        u.noalias() += f * (vectors.col(k) * vectors.col(k).adjoint());
    }
    return u;
}

}  // namespace detail

inline Spectral eig_hermitian(const ComplexMatrix& h) {
    auto [values, vectors] = detail::eig_hermitian_impl<3>(h);
    return {values, vectors};
}

/// exp(-i H t) for Hermitian H. Exactly unitary up to roundoff.
inline ComplexMatrix expm_unitary(const ComplexMatrix& h, double t) {
    return detail::expm_unitary_impl<3>(h, t);
}

inline double hermiticity_residual(const ComplexMatrix& h) {
    return detail::hermiticity_residual<3>(h);
}

/// Max-abs entry norm, the deviation measure used throughout.
inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double unitarity_defect(const ComplexMatrix& u) {
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity());
}

}  // namespace qjump
