#include "sqz/pipeline.hpp"

#include "sqz/detection.hpp"
#include "sqz/errors.hpp"
#include "sqz/model_chain.hpp"

namespace sqz {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TimeSeries synthesize_observed(const RunConfig& c, Mode mode, std::uint64_t seed, Execution exec) {
    auto ts = synthesize(detected_spectrum(c, mode), c.analyzer.sample_rate, c.analyzer.samples, seed, exec);
    add_white_noise(ts, dark_noise_linear(c.detection) * kShotNoiseVariance, seed, 1, exec);
    return ts;
}

TimeSeries synthesize_shot(const RunConfig& c, std::uint64_t seed, Execution exec) {
    auto ts = synthesize(NoiseSpectrum::constant(1.0), c.analyzer.sample_rate, c.analyzer.samples, seed, exec);
    add_white_noise(ts, dark_noise_linear(c.detection) * kShotNoiseVariance, seed, 1, exec);
    return ts;
}

Trace welch_trace(const TimeSeries& ts, double rbw, double lo, double hi, Execution exec) {
    const auto psd = psd_to_shot_units(welch_psd(ts, rbw, exec), ts.sample_rate);
    Trace t;
    t.rbw = rbw;
    t.vbw = rbw;
    const auto& f = psd.freqs();
    const auto& v = psd.values();
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
        if (f[k] < lo || f[k] > hi) continue;
        t.freqs.push_back(f[k]);
        t.values_db.push_back(to_db(v[k]));
    }
    if (t.freqs.empty()) throw DomainError("no Welch bins inside the requested band");
    return t;
}

Trace calibrate(const Trace& signal, const std::optional<Trace>& shot, std::optional<double> dark_db) {
    auto correct = [&](Trace t) {
        if (dark_db) t.values_db = dark_correct_db(t.freqs, t.values_db, *dark_db);
        return t;
    };
    Trace out = correct(signal);
    if (shot) out = normalize_to_shot(out, correct(*shot));
    return out;
}

Trace emulated_trace(const RunConfig& c, Mode mode, SweepConfig sweep, Execution exec) {
    const std::uint64_t base = sweep.seed;
    sweep.seed = derive_seed(base, mode == Mode::plus ? 0 : 1);
    const Trace signal = emulate_sweep(observed_spectrum(c, mode), sweep, exec);
    sweep.seed = derive_seed(base, 2);
    const Trace shot =
        emulate_sweep(NoiseSpectrum::constant(1.0 + dark_noise_linear(c.detection)), sweep, exec);
    std::optional<double> dark;
    if (c.analyzer.dark_correct) dark = c.detection.dark_noise_db;
    return calibrate(signal, shot, dark);
}

}  // namespace sqz
