#pragma once

// Run configuration: one JSON document with a section per module. Comments
// (// and /* */) are accepted. Missing keys keep their defaults; unknown
// keys and out-of-range values raise ConfigError naming the dotted key.

#include "sqz/detection.hpp"
#include "sqz/noise_model.hpp"
#include "sqz/opo_model.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace sqz {

struct AnalyzerSettings {
    double rbw = 100e3;            // Hz, used by synth/analyze and custom bands
    double vbw = 300.0;            // Hz
    std::size_t points = 401;
    double sample_rate = 25e6;     // Hz
    std::size_t samples = std::size_t{1} << 22;
    bool dark_correct = true;
};

struct RunConfig {
    OpoParams opo;
    ClassicalNoiseConfig noise;
    DetectionParams detection;
    AnalyzerSettings analyzer;
    std::uint64_t seed = 20041;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& c);

}  // namespace sqz
