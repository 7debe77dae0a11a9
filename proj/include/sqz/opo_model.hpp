#pragma once

// Quantum noise spectra of a degenerate OPO below threshold, from the
// linearized input-output model. S- and S+ are the squeezed and
// anti-squeezed quadrature variances of each +/-45 degree mode.

#include "sqz/gaussian_state.hpp"
#include "sqz/spectrum.hpp"

namespace sqz {

struct OpoParams {
    double pump_ratio = 0.42;          // pump amplitude over threshold amplitude
    double cavity_hwhm = 50e6;         // Hz
    double escape_efficiency = 0.9;

    // Throws ThresholdError for pump_ratio >= 1, DomainError otherwise.
    void validate() const;
};

double squeezed_variance(const OpoParams& p, double freq_hz);
double antisqueezed_variance(const OpoParams& p, double freq_hz);

// Signal/idler covariance whose +/-45 degree rotation is
// diag(S+, S-, S-, S+) in (x+, p+, x-, p-) order.
SpectralCovariance spectral_covariance(const OpoParams& p, double freq_hz);

NoiseSpectrum squeezed_spectrum(const OpoParams& p);

}  // namespace sqz
