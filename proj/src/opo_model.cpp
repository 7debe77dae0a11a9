#include "sqz/opo_model.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <sstream>

namespace sqz {

void OpoParams::validate() const {
    if (!(pump_ratio >= 0.0)) {
        std::ostringstream os;
        os << "pump_ratio must be >= 0, got " << pump_ratio;
        throw DomainError(os.str());
    }
    if (!(pump_ratio < 1.0)) {
        std::ostringstream os;
        os << "pump_ratio " << pump_ratio << " is at or above threshold";
        throw ThresholdError(os.str());
    }
    if (!(cavity_hwhm > 0.0) || !std::isfinite(cavity_hwhm))
        throw DomainError("cavity_hwhm must be positive and finite");
    if (!(escape_efficiency > 0.0 && escape_efficiency <= 1.0))
        throw DomainError("escape_efficiency must lie in (0,1]");
}

namespace {

void check_frequency(double f) {
    if (!(f >= 0.0)) {
        std::ostringstream os;
        os << "sideband frequency must be >= 0, got " << f;
        throw DomainError(os.str());
    }
}

}  // namespace

double squeezed_variance(const OpoParams& p, double freq_hz) {
    p.validate();
    check_frequency(freq_hz);
    const double sigma = p.pump_ratio;
    const double x = freq_hz / p.cavity_hwhm;
    return 1.0 - p.escape_efficiency * 4.0 * sigma / ((1.0 + sigma) * (1.0 + sigma) + x * x);
}

double antisqueezed_variance(const OpoParams& p, double freq_hz) {
    p.validate();
    check_frequency(freq_hz);
    const double sigma = p.pump_ratio;
    const double x = freq_hz / p.cavity_hwhm;
    return 1.0 + p.escape_efficiency * 4.0 * sigma / ((1.0 - sigma) * (1.0 - sigma) + x * x);
}

SpectralCovariance spectral_covariance(const OpoParams& p, double freq_hz) {
    const double sm = squeezed_variance(p, freq_hz);
    const double sp = antisqueezed_variance(p, freq_hz);
    Matrix4 rotated = Matrix4::Zero();
    rotated(quad::x_plus, quad::x_plus) = sp;
    rotated(quad::p_plus, quad::p_plus) = sm;
    rotated(quad::x_minus, quad::x_minus) = sm;
    rotated(quad::p_minus, quad::p_minus) = sp;
    return rotate_basis(SpectralCovariance(rotated));
}

NoiseSpectrum squeezed_spectrum(const OpoParams& p) {
    p.validate();
    return NoiseSpectrum([p](double f) { return squeezed_variance(p, f); });
}

}  // namespace sqz
