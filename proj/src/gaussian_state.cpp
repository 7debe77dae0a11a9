#include "sqz/gaussian_state.hpp"

#include "sqz/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace sqz {

namespace {

const Matrix4& mixing_matrix() {
    static const Matrix4 s = [] {
        const double h = 1.0 / std::sqrt(2.0);
        Matrix4 m;
        // rows: x+, p+, x-, p-   columns: x1, p1, x2, p2
        m << h, 0, h, 0,
             0, h, 0, h,
             h, 0, -h, 0,
             0, h, 0, -h;
        return m;
    }();
    return s;
}

void check_efficiency(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        std::ostringstream os;
        os << "loss efficiency must lie in [0,1], got " << eta;
        throw DomainError(os.str());
    }
}

}  // namespace

Matrix4 symplectic_form() {
    Matrix4 omega = Matrix4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

SpectralCovariance two_mode_squeezed_cov(double r) {
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Matrix4 m = Matrix4::Zero();
    m.diagonal().setConstant(c);
    m(0, 2) = m(2, 0) = s;
    m(1, 3) = m(3, 1) = -s;
    return SpectralCovariance(m);
}

SpectralCovariance rotate_basis(const SpectralCovariance& cov) {
    const Matrix4& s = mixing_matrix();
    Matrix4 out = s * cov.matrix() * s.transpose();
    // congruence is exactly symmetric in exact arithmetic; remove rounding skew
    out = 0.5 * (out + out.transpose()).eval();
    return SpectralCovariance(out);
}

SpectralCovariance apply_loss(const SpectralCovariance& cov, double eta) {
    check_efficiency(eta);
    return SpectralCovariance(eta * cov.matrix() + (1.0 - eta) * Matrix4::Identity());
}

double apply_loss(double variance, double eta) {
    check_efficiency(eta);
    return eta * variance + (1.0 - eta);
}

ModeVariancePair squeezed_pair(const SpectralCovariance& rotated) {
    return {rotated(quad::p_plus, quad::p_plus), rotated(quad::x_minus, quad::x_minus)};
}

double duan_inseparability(const ModeVariancePair& pair) {
    if (!(pair.s_plus > 0.0) || !(pair.s_minus > 0.0)) {
        std::ostringstream os;
        os << "squeezed variances must be positive, got (" << pair.s_plus << ", "
           << pair.s_minus << ")";
        throw DomainError(os.str());
    }
    return 0.5 * (pair.s_plus + pair.s_minus);
}

PhysicalityReport check_physicality(const SpectralCovariance& cov, double tol) {
    const Matrix4& v = cov.matrix();
    if (!v.allFinite()) return {false, "matrix has non-finite entries"};

    // rounding in congruences grows with the entry magnitude
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());

    const double asym = (v - v.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * scale) {
        std::ostringstream os;
        os << "not symmetric: max |V - V^T| = " << asym;
        return {false, os.str()};
    }

    const Matrix4 sym = 0.5 * (v + v.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix4> real_solver(sym, Eigen::EigenvaluesOnly);
    const double min_real = real_solver.eigenvalues().minCoeff();
    if (min_real < -tol * scale) {
        std::ostringstream os;
        os << "not positive semidefinite: min eigenvalue " << min_real;
        return {false, os.str()};
    }

    const Eigen::Matrix4cd h =
        sym.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * symplectic_form();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> herm_solver(h, Eigen::EigenvaluesOnly);
    const double min_herm = herm_solver.eigenvalues().minCoeff();
    if (min_herm < -tol * scale) {
        std::ostringstream os;
        os << "violates the uncertainty relation: min eigenvalue of V + i*Omega is "
           << min_herm;
        return {false, os.str()};
    }
    return {};
}

}  // namespace sqz
