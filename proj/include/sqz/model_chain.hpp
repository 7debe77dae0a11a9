#pragma once

// The full forward model for one run configuration: OPO quantum noise plus
// classical excess, seen through the homodyne detector.

#include "sqz/config.hpp"
#include "sqz/gaussian_state.hpp"
#include "sqz/noise_model.hpp"
#include "sqz/spectrum.hpp"

namespace sqz {

// Source spectrum of a rotated mode, before detection.
NoiseSpectrum source_spectrum(const RunConfig& c, Mode mode);

// After detection losses and electronic noise, as the analyzer sees it.
NoiseSpectrum observed_spectrum(const RunConfig& c, Mode mode);

// After detection losses, with the electronic noise removed.
NoiseSpectrum detected_spectrum(const RunConfig& c, Mode mode);

ModeVariancePair detected_pair(const RunConfig& c, double freq_hz);
double detected_inseparability(const RunConfig& c, double freq_hz);

// Escape efficiency times detection efficiency.
double total_efficiency(const RunConfig& c);

}  // namespace sqz
