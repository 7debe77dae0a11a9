#pragma once

// Two-mode Gaussian state algebra at a single sideband frequency.
//
// Quadrature ordering is (x1, p1, x2, p2) for the signal/idler basis and
// (x+, p+, x-, p-) after rotate_basis. Variances are normalized so that
// vacuum is the identity matrix.

#include <Eigen/Core>

#include <string>

namespace sqz {

using Matrix4 = Eigen::Matrix4d;

// Indices into a rotated covariance.
namespace quad {
inline constexpr int x_plus = 0;
inline constexpr int p_plus = 1;
inline constexpr int x_minus = 2;
inline constexpr int p_minus = 3;
}  // namespace quad

class SpectralCovariance {
public:
    SpectralCovariance() : m_(Matrix4::Identity()) {}
    explicit SpectralCovariance(const Matrix4& m) : m_(m) {}

    static SpectralCovariance vacuum() { return SpectralCovariance{}; }

    const Matrix4& matrix() const noexcept { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    double trace() const { return m_.trace(); }
    double determinant() const { return m_.determinant(); }

private:
    Matrix4 m_;
};

// Squeezed-quadrature variances of the +45 and -45 degree modes.
struct ModeVariancePair {
    double s_plus = 1.0;
    double s_minus = 1.0;
};

struct PhysicalityReport {
    bool ok = true;
    std::string diagnostic;  // empty when ok
    explicit operator bool() const noexcept { return ok; }
};

inline constexpr double kPhysicalityTolerance = 1e-9;

// Two-mode squeezed vacuum with squeezing parameter r. Negative r swaps the
// correlated and anti-correlated quadratures.
SpectralCovariance two_mode_squeezed_cov(double r);

// Congruence with the 50/50 mixing A(+/-) = (A1 +/- A2)/sqrt(2). The mixing
// matrix is symmetric and orthogonal, so the map is its own inverse.
SpectralCovariance rotate_basis(const SpectralCovariance& cov);

// Beam-splitter loss of transmission eta on both modes: eta*V + (1-eta)*I.
SpectralCovariance apply_loss(const SpectralCovariance& cov, double eta);

// Scalar form of the same map, for a single quadrature variance.
double apply_loss(double variance, double eta);

// Squeezed quadratures of a rotated covariance: V(p+) and V(x-).
ModeVariancePair squeezed_pair(const SpectralCovariance& rotated);

// Half-sum of the squeezed variances. Values below one certify that the
// signal and idler modes are inseparable.
double duan_inseparability(const ModeVariancePair& pair);

PhysicalityReport check_physicality(const SpectralCovariance& cov,
                                    double tol = kPhysicalityTolerance);

// The standard two-mode symplectic form, block-diagonal in (x_k, p_k).
Matrix4 symplectic_form();

}  // namespace sqz
