#pragma once

// Balanced homodyne detection: efficiency budget, white electronic
// (dark) noise, dark-noise correction and dB conversions.

#include "sqz/spectrum.hpp"

#include <span>
#include <vector>

namespace sqz {

struct DetectionParams {
    double quantum_efficiency = 0.95;
    double visibility = 0.97;
    double dark_noise_db = -6.0;  // electronic noise relative to shot noise

    void validate() const;
};

double to_db(double linear);
double from_db(double db);

// quantum_efficiency * visibility^2
double effective_efficiency(const DetectionParams& d);

// Linear dark-noise variance in shot-noise units.
double dark_noise_linear(const DetectionParams& d);

// eta*S + (1 - eta) + dark
NoiseSpectrum observe(const NoiseSpectrum& s_in, const DetectionParams& d);

// Observation with the dark-noise term left out; equals
// dark_correct(observe(s, d), d.dark_noise_db).
NoiseSpectrum observe_corrected(const NoiseSpectrum& s_in, const DetectionParams& d);

// Subtracts the dark level in linear units. Tabulated spectra are checked
// eagerly; analytic ones throw CorrectionUnderflow when evaluated at a
// frequency where the observed value does not exceed the dark level.
NoiseSpectrum dark_correct(const NoiseSpectrum& s_obs, double dark_noise_db);

// Same correction on a dB trace sampled at freqs (both shot-noise relative).
std::vector<double> dark_correct_db(std::span<const double> freqs,
                                    std::span<const double> values_db, double dark_noise_db);

}  // namespace sqz
