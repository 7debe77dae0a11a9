#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library code paths being checked.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Variance of the quadrature combination c^T q for covariance v.
inline double combo_variance(const Eigen::Matrix4d& v, const std::array<double, 4>& c) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += c[i] * v(i, j) * c[j];
    return acc;
}

// Rotated-basis variances written out from A(+/-) = (A1 +/- A2)/sqrt(2).
struct RotatedVariances {
    double x_plus, p_plus, x_minus, p_minus;
};

inline RotatedVariances rotated_variances(const Eigen::Matrix4d& v) {
    const double h = 1.0 / std::sqrt(2.0);
    return {combo_variance(v, {h, 0, h, 0}), combo_variance(v, {0, h, 0, h}),
            combo_variance(v, {h, 0, -h, 0}), combo_variance(v, {0, h, 0, -h})};
}

// Symplectic eigenvalues: moduli of the eigenvalues of i*Omega*V. A state is
// physical iff all are >= 1 (vacuum-variance-1 convention).
inline std::vector<double> symplectic_eigenvalues(const Eigen::Matrix4d& v) {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1;
    omega(1, 0) = -1;
    omega(2, 3) = 1;
    omega(3, 2) = -1;
    Eigen::EigenSolver<Eigen::Matrix4d> es(omega * v);
    std::vector<double> out;
    for (int i = 0; i < 4; ++i) out.push_back(std::abs(es.eigenvalues()[i]));
    std::sort(out.begin(), out.end());
    // eigenvalues come in +/- i*nu pairs
    return {out[0], out[2]};
}

// Brute-force pulsed variance: trapezoid rule in nu on a uniform grid up to
// nu_max, split at `jumps` (where S may be discontinuous; one-sided limits
// are used), plus the asymptotic tail S_tail * (T/pi) / (2 pi nu_max T).
inline double brute_force_pulsed(const std::function<double(double)>& s, double T,
                                 std::vector<double> jumps, double nu_max, std::size_t points,
                                 double s_tail) {
    auto kernel = [T](double nu) {
        const double x = std::numbers::pi * nu * T;
        if (x == 0.0) return T * T;
        const double sn = std::sin(x) / x;
        return T * T * sn * sn;
    };
    std::vector<double> edges{0.0};
    for (double j : jumps) edges.push_back(j);
    edges.push_back(nu_max);
    const double h = nu_max / static_cast<double>(points - 1);
    double total = 0.0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e];
        const double b = edges[e + 1];
        const auto n = static_cast<std::size_t>(std::ceil((b - a) / h));
        const double step = (b - a) / static_cast<double>(n);
        const double eps = 1e-9 * step;
        double acc = 0.5 * (s(a + eps) * kernel(a) + s(b - eps) * kernel(b));
        for (std::size_t i = 1; i < n; ++i) {
            const double nu = a + step * static_cast<double>(i);
            acc += s(nu) * kernel(nu);
        }
        total += acc * step;
    }
    const double a = std::numbers::pi * nu_max * T;
    total += s_tail * (T / std::numbers::pi) / (2.0 * a);
    return total;
}

// Expected value of an averaged Hann periodogram: the discrete spectrum
// smoothed by the window's spectral kernel |W(f)|^2, normalized to unit area.
inline double hann_kernel(double offset_bins, std::size_t len) {
    // |sum_n w[n] e^{-i 2 pi f n / L}|^2 for a periodic Hann window, f in bins
    std::complex<double> acc = 0.0;
    const std::complex<double> step = std::polar(1.0, -2.0 * std::numbers::pi * offset_bins / len);
    std::complex<double> phase = 1.0;
    for (std::size_t n = 0; n < len; ++n) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / len));
        acc += w * phase;
        phase *= step;
    }
    return std::norm(acc);
}

}  // namespace oracle
