#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace sqz {

// One-sided variance spectrum as a function of sideband frequency (Hz).
// Model spectra are in shot-noise units (1.0 = shot-noise limit); Welch
// estimates carry variance per Hz.
//
// A spectrum is either analytic (wraps a callable) or tabulated (linear
// interpolation on an ascending grid, held constant beyond the ends).
// Breakpoints mark frequencies where the spectrum may be discontinuous;
// quadrature routines split their intervals there.
class NoiseSpectrum {
public:
    using Function = std::function<double(double)>;

    NoiseSpectrum();
    explicit NoiseSpectrum(Function fn, std::vector<double> breakpoints = {});

    static NoiseSpectrum constant(double value);
    static NoiseSpectrum tabulated(std::vector<double> freqs, std::vector<double> values);

    double operator()(double freq_hz) const { return fn_(freq_hz); }
    std::vector<double> sample(std::span<const double> freqs) const;

    bool is_tabulated() const noexcept { return !freqs_.empty(); }
    const std::vector<double>& freqs() const noexcept { return freqs_; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

    NoiseSpectrum scaled(double factor) const;
    NoiseSpectrum plus(const NoiseSpectrum& other) const;

private:
    Function fn_;
    std::vector<double> breakpoints_;
    std::vector<double> freqs_;
    std::vector<double> values_;
};

// Piecewise-constant spectrum: values[i] on [breakpoints[i-1], breakpoints[i])
// with breakpoints[-1] = 0, and tail_value above the last breakpoint.
struct PiecewiseSpectrum {
    std::vector<double> breakpoints;
    std::vector<double> values;
    double tail_value = 1.0;

    void validate() const;
    double operator()(double freq_hz) const;
    NoiseSpectrum to_spectrum() const;
};

}  // namespace sqz
