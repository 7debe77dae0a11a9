#include "sqz/detection.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <sstream>

namespace sqz {

void DetectionParams::validate() const {
    if (!(quantum_efficiency > 0.0 && quantum_efficiency <= 1.0))
        throw DomainError("quantum_efficiency must lie in (0,1]");
    if (!(visibility > 0.0 && visibility <= 1.0))
        throw DomainError("visibility must lie in (0,1]");
    if (!(dark_noise_db < 0.0)) throw DomainError("dark_noise_db must be negative");
}

double to_db(double linear) {
    if (!(linear > 0.0)) {
        std::ostringstream os;
        os << "dB conversion needs a positive value, got " << linear;
        throw DomainError(os.str());
    }
    return 10.0 * std::log10(linear);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double effective_efficiency(const DetectionParams& d) {
    return d.quantum_efficiency * d.visibility * d.visibility;
}

double dark_noise_linear(const DetectionParams& d) { return from_db(d.dark_noise_db); }

NoiseSpectrum observe(const NoiseSpectrum& s_in, const DetectionParams& d) {
    d.validate();
    const double eta = effective_efficiency(d);
    const double offset = (1.0 - eta) + dark_noise_linear(d);
    if (s_in.is_tabulated()) {
        std::vector<double> v = s_in.values();
        for (double& x : v) x = eta * x + offset;
        return NoiseSpectrum::tabulated(s_in.freqs(), std::move(v));
    }
    return NoiseSpectrum([s_in, eta, offset](double f) { return eta * s_in(f) + offset; },
                         s_in.breakpoints());
}

NoiseSpectrum observe_corrected(const NoiseSpectrum& s_in, const DetectionParams& d) {
    d.validate();
    const double eta = effective_efficiency(d);
    if (s_in.is_tabulated()) {
        std::vector<double> v = s_in.values();
        for (double& x : v) x = eta * x + (1.0 - eta);
        return NoiseSpectrum::tabulated(s_in.freqs(), std::move(v));
    }
    return NoiseSpectrum([s_in, eta](double f) { return eta * s_in(f) + (1.0 - eta); },
                         s_in.breakpoints());
}

namespace {

[[noreturn]] void underflow(double f, double observed, double dark) {
    std::ostringstream os;
    os << "dark-noise correction underflow at " << f << " Hz: observed " << observed
       << " <= dark level " << dark;
    throw CorrectionUnderflow(f, os.str());
}

}  // namespace

NoiseSpectrum dark_correct(const NoiseSpectrum& s_obs, double dark_noise_db) {
    const double dark = from_db(dark_noise_db);
    if (s_obs.is_tabulated()) {
        std::vector<double> v = s_obs.values();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > dark)) underflow(s_obs.freqs()[i], v[i], dark);
            v[i] -= dark;
        }
        return NoiseSpectrum::tabulated(s_obs.freqs(), std::move(v));
    }
    return NoiseSpectrum(
        [s_obs, dark](double f) {
            const double v = s_obs(f);
            if (!(v > dark)) underflow(f, v, dark);
            return v - dark;
        },
        s_obs.breakpoints());
}

std::vector<double> dark_correct_db(std::span<const double> freqs,
                                    std::span<const double> values_db, double dark_noise_db) {
    if (freqs.size() != values_db.size())
        throw DomainError("dark_correct_db: grid and value lengths differ");
    const double dark = from_db(dark_noise_db);
    std::vector<double> out(values_db.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = from_db(values_db[i]);
        if (!(v > dark)) underflow(freqs[i], v, dark);
        out[i] = to_db(v - dark);
    }
    return out;
}

}  // namespace sqz
