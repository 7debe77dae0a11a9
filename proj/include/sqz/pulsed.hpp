#pragma once

// Noise variance of a measurement integrated over a rectangular window T:
//
//     sigma^2 = integral_0^inf S(nu) T^2 sinc^2(pi nu T) d nu
//
// The integrand oscillates with zeros at nu = k/T. The quadrature integrates
// each lobe [k/T, (k+1)/T] with adaptive Gauss-Kronrod (split again at any
// spectrum breakpoints), and closes the integral beyond K lobes with the
// exact constant-spectrum tail plus a bound for the spectrum's variation.

#include "sqz/dsp.hpp"
#include "sqz/spectrum.hpp"

#include <cstddef>

namespace sqz {

struct PulsedWindow {
    double duration = 1e-6;  // s
    void validate() const;
};

struct QuadratureOptions {
    std::size_t lobes = 10000;
    double lobe_rel_tol = 1e-11;
    int max_depth = 40;
};

struct PulsedReport {
    double variance = 0.0;            // sigma^2, same normalization as S
    double shot_variance = 0.0;       // T/2, the flat S = 1 value
    double normalized = 0.0;          // variance / shot_variance
    double improvement_factor = 0.0;  // shot_variance / variance
    double error_estimate = 0.0;      // absolute bound on |variance - exact|
    double tail = 0.0;                // contribution beyond the last lobe
    std::size_t evaluations = 0;
};

PulsedReport pulsed_analysis(const NoiseSpectrum& spectrum, const PulsedWindow& w,
                             const QuadratureOptions& opt = {},
                             Execution exec = Execution::parallel);

double pulsed_variance(const NoiseSpectrum& spectrum, const PulsedWindow& w);
double improvement_factor(const NoiseSpectrum& spectrum, const PulsedWindow& w);

// Shot-noise-limited below 50 kHz and 3 dB squeezed above.
PiecewiseSpectrum reference_piecewise_model();

// min(S, 1) below `knee`: excess noise removed by a feedback loop.
NoiseSpectrum clamp_below_knee(const NoiseSpectrum& s, double knee_hz);

}  // namespace sqz
