#include "sqz/model_chain.hpp"

#include "sqz/detection.hpp"

namespace sqz {

NoiseSpectrum source_spectrum(const RunConfig& c, Mode mode) {
    return total_spectrum(c.opo, c.noise, mode);
}

NoiseSpectrum observed_spectrum(const RunConfig& c, Mode mode) {
    return observe(source_spectrum(c, mode), c.detection);
}

NoiseSpectrum detected_spectrum(const RunConfig& c, Mode mode) {
    return observe_corrected(source_spectrum(c, mode), c.detection);
}

ModeVariancePair detected_pair(const RunConfig& c, double freq_hz) {
    return {detected_spectrum(c, Mode::plus)(freq_hz), detected_spectrum(c, Mode::minus)(freq_hz)};
}

double detected_inseparability(const RunConfig& c, double freq_hz) {
    return duan_inseparability(detected_pair(c, freq_hz));
}

double total_efficiency(const RunConfig& c) {
    return c.opo.escape_efficiency * effective_efficiency(c.detection);
}

}  // namespace sqz
