#include "sqz/dsp.hpp"

#include "fft.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "sqz/detection.hpp"
#include "sqz/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace sqz {

namespace {

constexpr std::uint64_t kSynthStream = 0;
constexpr std::uint64_t kSweepStream = 2;
constexpr std::size_t kSynthBlock = 4096;   // bins per random stream
constexpr std::size_t kNoiseBlock = 4096;   // samples per random stream
constexpr std::size_t kWelchChunk = 64;     // segments per partial sum
constexpr double kSweepKernelSigmas = 6.0;
constexpr std::size_t kSweepKernelIntervals = 800;  // Simpson, even
constexpr double kMaxVideoAverages = 1e15;

bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

}  // namespace

void TimeSeries::validate() const {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
        throw DomainError("time series sample_rate must be positive");
    if (samples.empty()) throw DomainError("time series is empty");
}

double TimeSeries::variance() const {
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double acc = 0.0;
    for (double x : samples) acc += (x - mean) * (x - mean);
    return acc / n;
}

void Trace::validate() const {
    if (freqs.size() != values_db.size()) throw DomainError("trace grid and values differ in length");
    for (std::size_t i = 1; i < freqs.size(); ++i)
        if (!(freqs[i] > freqs[i - 1])) throw DomainError("trace frequencies must be strictly ascending");
    if (!(vbw > 0.0) || !(rbw >= vbw)) throw DomainError("trace requires rbw >= vbw > 0");
}

void SweepConfig::validate() const {
    if (!(start < stop)) throw DomainError("sweep start must be below stop");
    if (n_points < 2) throw DomainError("sweep needs at least two points");
    if (!(vbw > 0.0) || !(rbw >= vbw)) throw DomainError("sweep requires rbw >= vbw > 0");
    const double sigma = rbw / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    if (!(start > kSweepKernelSigmas * sigma)) {
        std::ostringstream os;
        os << "sweep start " << start << " Hz is too close to DC for RBW " << rbw
           << " Hz (needs > " << kSweepKernelSigmas * sigma << " Hz)";
        throw DomainError(os.str());
    }
}

std::vector<double> linear_grid(double start, double stop, std::size_t n) {
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = start;
        return g;
    }
    const double step = (stop - start) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = start + step * static_cast<double>(i);
    g.back() = stop;
    return g;
}

// ---------------------------------------------------------------- synthesis

TimeSeries synthesize(const NoiseSpectrum& spectrum, double sample_rate, std::size_t n_samples,
                      std::uint64_t seed, Execution exec) {
    if (!is_power_of_two(n_samples)) {
        std::ostringstream os;
        os << "synthesis length must be a power of two, got " << n_samples;
        throw DomainError(os.str());
    }
    if (n_samples < 2) throw DomainError("synthesis length must be at least 2");
    if (!(sample_rate > 0.0)) throw DomainError("sample_rate must be positive");

    const std::size_t n = n_samples;
    const std::size_t n_bins = n / 2 + 1;
    const double df = sample_rate / static_cast<double>(n);
    // E|X_k|^2 = S(f_k) * var_ref / n for every bin of the full (two-sided)
    // spectrum, which makes a flat S = 1 record have variance var_ref.
    const double bin_scale = kShotNoiseVariance / static_cast<double>(n);

    auto bins = detail::fftw_alloc<std::complex<double>>(n_bins);
    const std::size_t n_blocks = (n_bins + kSynthBlock - 1) / kSynthBlock;

    detail::for_each_index(n_blocks, exec, [&](std::size_t b) {
        auto rng = detail::block_rng(seed, kSynthStream, b);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const std::size_t lo = b * kSynthBlock;
        const std::size_t hi = std::min(n_bins, lo + kSynthBlock);
        for (std::size_t k = lo; k < hi; ++k) {
            const double g1 = gauss(rng);
            const double g2 = gauss(rng);
            if (k == 0) {
                bins[k] = 0.0;
                continue;
            }
            const double f = df * static_cast<double>(k);
            const double s = spectrum(f);
            if (!(s >= 0.0) || !std::isfinite(s)) {
                std::ostringstream os;
                os << "target spectrum is negative or non-finite at " << f << " Hz (" << s << ")";
                throw DomainError(os.str());
            }
            const double amp = std::sqrt(s * bin_scale);
            if (k == n / 2)
                bins[k] = amp * g1;
            else
                bins[k] = std::complex<double>(g1, g2) * (amp / std::numbers::sqrt2);
        }
    });

    TimeSeries ts;
    ts.sample_rate = sample_rate;
    ts.seed = seed;
    auto out = detail::fftw_alloc<double>(n);
    detail::RealFft plan(n, detail::RealFft::Direction::inverse);
    plan.inverse(bins.get(), out.get());
    ts.samples.assign(out.get(), out.get() + n);
    return ts;
}

void add_white_noise(TimeSeries& ts, double variance, std::uint64_t seed, std::uint64_t stream,
                     Execution exec) {
    if (!(variance >= 0.0)) throw DomainError("white-noise variance must be >= 0");
    const double sd = std::sqrt(variance);
    const std::size_t n = ts.samples.size();
    const std::size_t n_blocks = (n + kNoiseBlock - 1) / kNoiseBlock;
    // stream 0 is synthesis; keep white noise on its own streams
    const std::uint64_t tagged = stream + 0x100;
    detail::for_each_index(n_blocks, exec, [&](std::size_t b) {
        auto rng = detail::block_rng(seed, tagged, b);
        std::normal_distribution<double> gauss(0.0, sd);
        const std::size_t lo = b * kNoiseBlock;
        const std::size_t hi = std::min(n, lo + kNoiseBlock);
        for (std::size_t i = lo; i < hi; ++i) ts.samples[i] += gauss(rng);
    });
}

// -------------------------------------------------------------------- welch

std::size_t welch_segment_length(double sample_rate, double rbw) {
    if (!(sample_rate > 0.0) || !(rbw > 0.0)) throw DomainError("welch needs positive rates");
    std::size_t len = 2;
    while (sample_rate / static_cast<double>(len) > 0.5 * rbw) {
        len <<= 1;
        if (len > (std::size_t{1} << 40)) throw DomainError("rbw is too small for any record");
    }
    return len;
}

NoiseSpectrum welch_psd(const TimeSeries& ts, double rbw, Execution exec) {
    ts.validate();
    const std::size_t len = welch_segment_length(ts.sample_rate, rbw);
    const std::size_t hop = len / 2;
    const std::size_t n = ts.samples.size();
    const std::size_t min_len = len + hop;
    if (n < min_len) {
        std::ostringstream os;
        os << "rbw " << rbw << " Hz needs a record of at least " << min_len
           << " samples for two Welch segments, got " << n;
        throw DomainError(os.str());
    }
    const std::size_t n_segments = (n - len) / hop + 1;
    const std::size_t n_bins = len / 2 + 1;

    std::vector<double> window(len);
    for (std::size_t i = 0; i < len; ++i)
        window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(len)));
    const double window_power = std::inner_product(window.begin(), window.end(), window.begin(), 0.0);

    detail::RealFft plan(len, detail::RealFft::Direction::forward);
    const std::size_t n_chunks = (n_segments + kWelchChunk - 1) / kWelchChunk;
    std::vector<double> partial(n_chunks * n_bins, 0.0);

    detail::for_each_index(n_chunks, exec, [&](std::size_t c) {
        auto seg = detail::fftw_alloc<double>(len);
        auto spec = detail::fftw_alloc<std::complex<double>>(n_bins);
        double* acc = partial.data() + c * n_bins;
        const std::size_t first = c * kWelchChunk;
        const std::size_t last = std::min(n_segments, first + kWelchChunk);
        for (std::size_t s = first; s < last; ++s) {
            const double* x = ts.samples.data() + s * hop;
            for (std::size_t i = 0; i < len; ++i) seg[i] = x[i] * window[i];
            plan.forward(seg.get(), spec.get());
            for (std::size_t k = 0; k < n_bins; ++k) acc[k] += std::norm(spec[k]);
        }
    });

    std::vector<double> psd(n_bins, 0.0);
    for (std::size_t c = 0; c < n_chunks; ++c)
        for (std::size_t k = 0; k < n_bins; ++k) psd[k] += partial[c * n_bins + k];

    const double base = 1.0 / (ts.sample_rate * window_power * static_cast<double>(n_segments));
    std::vector<double> freqs(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const bool edge = (k == 0 || k == n_bins - 1);
        psd[k] *= edge ? base : 2.0 * base;
        freqs[k] = ts.sample_rate * static_cast<double>(k) / static_cast<double>(len);
    }
    return NoiseSpectrum::tabulated(std::move(freqs), std::move(psd));
}

NoiseSpectrum psd_to_shot_units(const NoiseSpectrum& psd, double sample_rate) {
    return psd.scaled(sample_rate / (2.0 * kShotNoiseVariance));
}

// -------------------------------------------------------------------- sweep

double video_averages(double rbw, double vbw) {
    if (!(vbw > 0.0) || !(rbw >= vbw)) throw DomainError("requires rbw >= vbw > 0");
    const double n = std::round(rbw / (2.0 * vbw));
    return std::clamp(n, 1.0, kMaxVideoAverages);
}

std::vector<double> rbw_convolve(const NoiseSpectrum& spectrum, std::span<const double> freqs,
                                 double rbw, Execution exec) {
    const double sigma = rbw / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    const double half = kSweepKernelSigmas * sigma;
    const std::size_t m = kSweepKernelIntervals;
    const double h = 2.0 * half / static_cast<double>(m);

    // Simpson weights times the Gaussian, normalized on the discrete grid
    std::vector<double> kernel(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        const double u = -half + h * static_cast<double>(j);
        const double simpson = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        kernel[j] = simpson * std::exp(-0.5 * u * u / (sigma * sigma));
    }
    const double norm = std::accumulate(kernel.begin(), kernel.end(), 0.0);
    for (double& w : kernel) w /= norm;

    std::vector<double> out(freqs.size());
    detail::for_each_index(freqs.size(), exec, [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= m; ++j)
            acc += kernel[j] * spectrum(freqs[i] - half + h * static_cast<double>(j));
        out[i] = acc;
    });
    return out;
}

Trace emulate_sweep(const NoiseSpectrum& spectrum, const SweepConfig& cfg, Execution exec) {
    cfg.validate();
    Trace t;
    t.freqs = linear_grid(cfg.start, cfg.stop, cfg.n_points);
    t.rbw = cfg.rbw;
    t.vbw = cfg.vbw;
    const std::vector<double> target = rbw_convolve(spectrum, t.freqs, cfg.rbw, exec);
    const double n_avg = video_averages(cfg.rbw, cfg.vbw);

    t.values_db.resize(t.freqs.size());
    detail::for_each_index(t.freqs.size(), exec, [&](std::size_t i) {
        if (!(target[i] > 0.0)) {
            std::ostringstream os;
            os << "analyzer input power is not positive at " << t.freqs[i] << " Hz";
            throw DomainError(os.str());
        }
        // mean of n_avg exponential power samples
        auto rng = detail::block_rng(cfg.seed, kSweepStream, i);
        std::gamma_distribution<double> detector(n_avg, target[i] / n_avg);
        t.values_db[i] = to_db(detector(rng));
    });
    return t;
}

Trace normalize_to_shot(const Trace& trace, const Trace& shot) {
    if (trace.freqs.size() != shot.freqs.size())
        throw DomainError("normalize_to_shot: frequency grids differ in length");
    for (std::size_t i = 0; i < trace.freqs.size(); ++i) {
        const double a = trace.freqs[i];
        const double b = shot.freqs[i];
        if (std::abs(a - b) > 1e-9 * std::max(std::abs(a), 1.0)) {
            std::ostringstream os;
            os << "normalize_to_shot: frequency grids differ at index " << i << " (" << a
               << " vs " << b << " Hz)";
            throw DomainError(os.str());
        }
    }
    Trace out = trace;
    for (std::size_t i = 0; i < out.values_db.size(); ++i) out.values_db[i] -= shot.values_db[i];
    return out;
}

}  // namespace sqz
