#include "sqz/noise_model.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace sqz {

std::string_view to_string(Mode m) { return m == Mode::plus ? "plus" : "minus"; }

Mode mode_from_string(std::string_view s) {
    if (s == "plus" || s == "+") return Mode::plus;
    if (s == "minus" || s == "-") return Mode::minus;
    throw DomainError("unknown mode '" + std::string(s) + "' (expected plus or minus)");
}

void ClassicalNoiseConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(what);
    };
    require(relax_center > 0.0, "relax_center must be positive");
    require(relax_fwhm > 0.0, "relax_fwhm must be positive");
    require(relax_amp_plus >= 0.0 && relax_amp_minus >= 0.0, "relax amplitudes must be >= 0");
    require(lf_knee > 0.0, "lf_knee must be positive");
    require(lf_amp >= 0.0, "lf_amp must be >= 0");
    require(std::isfinite(lf_exponent), "lf_exponent must be finite");
}

ClassicalNoiseConfig ClassicalNoiseConfig::quiet() {
    ClassicalNoiseConfig c;
    c.relax_amp_plus = 0.0;
    c.relax_amp_minus = 0.0;
    c.lf_amp = 0.0;
    return c;
}

double excess_noise(const ClassicalNoiseConfig& c, double freq_hz, Mode mode) {
    if (!(freq_hz > 0.0)) {
        std::ostringstream os;
        os << "excess noise is defined for f > 0, got " << freq_hz;
        throw DomainError(os.str());
    }
    const double amp = mode == Mode::plus ? c.relax_amp_plus : c.relax_amp_minus;
    const double hw = 0.5 * c.relax_fwhm;
    const double d = freq_hz - c.relax_center;
    const double peak = amp * hw * hw / (d * d + hw * hw);
    const double low = c.lf_amp == 0.0 ? 0.0 : c.lf_amp * std::pow(c.lf_knee / freq_hz, c.lf_exponent);
    return peak + low;
}

NoiseSpectrum total_spectrum(const OpoParams& p, const ClassicalNoiseConfig& c, Mode mode) {
    p.validate();
    c.validate();
    return NoiseSpectrum([p, c, mode](double f) {
        return squeezed_variance(p, f) + excess_noise(c, f, mode);
    });
}

}  // namespace sqz
