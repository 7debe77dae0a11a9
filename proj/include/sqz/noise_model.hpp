#pragma once

// Classical excess noise added on top of the quantum spectra: the laser
// relaxation-oscillation peak and a low-frequency technical-noise rise.
// Defaults are a phenomenological fit, not measured values.

#include "sqz/opo_model.hpp"
#include "sqz/spectrum.hpp"

#include <string_view>

namespace sqz {

enum class Mode { plus, minus };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

struct ClassicalNoiseConfig {
    double relax_center = 1e6;     // Hz
    double relax_fwhm = 100e3;     // Hz
    double relax_amp_plus = 1.0;   // excess variance at the peak, shot-noise units
    double relax_amp_minus = 3.0;
    double lf_knee = 50e3;         // Hz
    double lf_exponent = 2.0;
    double lf_amp = 0.75;          // excess variance at lf_knee

    void validate() const;

    // All amplitudes zero.
    static ClassicalNoiseConfig quiet();
};

double excess_noise(const ClassicalNoiseConfig& c, double freq_hz, Mode mode);

// Quantum squeezed variance plus classical excess for one rotated mode.
NoiseSpectrum total_spectrum(const OpoParams& p, const ClassicalNoiseConfig& c, Mode mode);

}  // namespace sqz
