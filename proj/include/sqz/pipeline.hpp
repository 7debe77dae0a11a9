#pragma once

// End-to-end measurement paths shared by the command-line tool and the
// acceptance runner: digitized records, Welch traces, emulated sweeps, all
// calibrated to shot noise the way the analyzer data are.

#include "sqz/config.hpp"
#include "sqz/dsp.hpp"
#include "sqz/noise_model.hpp"

#include <cstdint>
#include <optional>

namespace sqz {

// Independent seed for the k-th stochastic draw of a run (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

// Record of one rotated mode as digitized: detected model spectrum plus
// white electronic noise at the dark level.
TimeSeries synthesize_observed(const RunConfig& c, Mode mode, std::uint64_t seed,
                               Execution exec = Execution::parallel);

// Shot-noise reference record (vacuum input) with the same dark noise.
TimeSeries synthesize_shot(const RunConfig& c, std::uint64_t seed, Execution exec = Execution::parallel);

// Welch estimate in dB of shot noise on the bins inside [lo, hi], excluding
// DC and Nyquist. The trace carries vbw = rbw (no video filtering).
Trace welch_trace(const TimeSeries& ts, double rbw, double lo = 0.0, double hi = 1e300,
                  Execution exec = Execution::parallel);

// Optional dark-noise subtraction on both traces, then normalization of the
// signal to the shot reference.
Trace calibrate(const Trace& signal, const std::optional<Trace>& shot, std::optional<double> dark_db);

// Swept-analyzer view of one mode, normalized to an emulated shot sweep and
// dark-corrected when c.analyzer.dark_correct is set.
Trace emulated_trace(const RunConfig& c, Mode mode, SweepConfig sweep, Execution exec = Execution::parallel);

}  // namespace sqz
