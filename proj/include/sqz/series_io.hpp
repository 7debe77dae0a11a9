#pragma once

// On-disk formats.
//
// Time series ("SQTS"), little-endian:
//   offset  0  char[4]  magic "SQTS"
//   offset  4  u32      version (1)
//   offset  8  f64      sample_rate (Hz)
//   offset 16  u64      n_samples
//   offset 24  u64      seed
//   offset 32  f64[n]   samples
//
// Traces: CSV with header `freq_hz,value_db`, or JSON with the Trace fields.

#include "sqz/dsp.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace sqz {

inline constexpr std::uint32_t kSeriesVersion = 1;
inline constexpr std::size_t kSeriesHeaderBytes = 32;

std::vector<std::byte> encode_series(const TimeSeries& ts);
TimeSeries decode_series(std::span<const std::byte> bytes);

void write_series(const std::filesystem::path& path, const TimeSeries& ts);
TimeSeries read_series(const std::filesystem::path& path);

void write_trace_csv(std::ostream& os, const Trace& t);
nlohmann::json trace_to_json(const Trace& t);
Trace trace_from_json(const nlohmann::json& j);

}  // namespace sqz
