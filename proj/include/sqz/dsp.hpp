#pragma once

// Time-series synthesis from a target spectrum, Welch PSD estimation and
// swept spectrum-analyzer emulation.
//
// Every stochastic kernel splits its random stream by a fixed block index
// (never by thread), so Execution::serial and Execution::parallel produce
// bit-identical results. The serial path is the reference the tests hold
// the OpenMP path to.

#include "sqz/spectrum.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sqz {

enum class Execution { serial, parallel };

// Variance of a shot-noise-limited record. A flat model spectrum of 1.0
// synthesizes to a record with this variance (up to the removed DC bin).
inline constexpr double kShotNoiseVariance = 1.0;

struct TimeSeries {
    double sample_rate = 0.0;  // Hz
    std::vector<double> samples;
    std::uint64_t seed = 0;

    void validate() const;
    double variance() const;
};

struct Trace {
    std::vector<double> freqs;      // Hz, strictly ascending
    std::vector<double> values_db;  // dB relative to shot noise
    double rbw = 0.0;
    double vbw = 0.0;

    void validate() const;
};

struct SweepConfig {
    double start = 0.0;  // Hz
    double stop = 0.0;   // Hz
    std::size_t n_points = 401;
    double rbw = 100e3;
    double vbw = 300.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Stationary Gaussian record whose one-sided PSD in shot-noise units is
// `spectrum` on (0, fs/2]. The DC bin is left empty (AC-coupled detector).
// n_samples must be a power of two.
TimeSeries synthesize(const NoiseSpectrum& spectrum, double sample_rate, std::size_t n_samples,
                      std::uint64_t seed, Execution exec = Execution::parallel);

// White Gaussian samples of the given variance added in place, e.g. the
// electronic dark noise of the detector. `stream` separates this draw from
// the synthesis stream of the same seed.
void add_white_noise(TimeSeries& ts, double variance, std::uint64_t seed,
                     std::uint64_t stream = 1, Execution exec = Execution::parallel);

// Welch segment length: smallest power of two with bin spacing <= rbw/2.
std::size_t welch_segment_length(double sample_rate, double rbw);

// Averaged periodogram (periodic Hann window, 50% overlap), one-sided, in
// variance per Hz: integrating over [0, fs/2] returns the record variance.
// Tabulated on k * fs / L for k = 0..L/2.
NoiseSpectrum welch_psd(const TimeSeries& ts, double rbw, Execution exec = Execution::parallel);

// Rescales a PSD in variance/Hz to shot-noise units (2 * variance / fs per Hz
// is the shot-noise level).
NoiseSpectrum psd_to_shot_units(const NoiseSpectrum& psd, double sample_rate);

// Number of post-detection averages implied by the video bandwidth.
double video_averages(double rbw, double vbw);

// Swept analyzer: Gaussian RBW kernel (FWHM = rbw) convolved with the
// spectrum, then one realization of an RMS detector averaging
// video_averages(rbw, vbw) exponential power samples.
Trace emulate_sweep(const NoiseSpectrum& spectrum, const SweepConfig& cfg,
                    Execution exec = Execution::parallel);

// Noise-free part of emulate_sweep: the RBW-convolved target, linear units.
std::vector<double> rbw_convolve(const NoiseSpectrum& spectrum, std::span<const double> freqs,
                                 double rbw, Execution exec = Execution::parallel);

Trace normalize_to_shot(const Trace& trace, const Trace& shot);

std::vector<double> linear_grid(double start, double stop, std::size_t n);

}  // namespace sqz
