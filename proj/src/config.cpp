#include "sqz/config.hpp"

#include "sqz/errors.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sqz {

namespace {

using nlohmann::json;

// Reads one section, binding each known key to a setter. Setters throw
// std::invalid_argument with a short reason on bad values.
class SectionReader {
public:
    SectionReader(const json& root, std::string name) : name_(std::move(name)) {
        if (!root.contains(name_)) return;
        section_ = &root.at(name_);
        if (!section_->is_object()) throw ConfigError(name_, name_ + ": expected an object");
    }

    template <typename Setter>
    SectionReader& bind(const std::string& key, Setter setter) {
        known_.emplace(key, 0);
        if (!section_ || !section_->contains(key)) return *this;
        const std::string path = name_ + "." + key;
        const json& v = section_->at(key);
        try {
            setter(v);
        } catch (const json::exception&) {
            throw ConfigError(path, path + ": wrong type (" + std::string(v.type_name()) + ")");
        } catch (const std::invalid_argument& e) {
            throw ConfigError(path, path + ": " + e.what());
        }
        return *this;
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [key, _] : section_->items()) {
            if (!known_.count(key)) {
                const std::string path = name_ + "." + key;
                throw ConfigError(path, path + ": unknown key");
            }
        }
    }

private:
    std::string name_;
    const json* section_ = nullptr;
    std::map<std::string, int> known_;
};

double number(const json& v) {
    if (!v.is_number()) throw std::invalid_argument("expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw std::invalid_argument("must be finite");
    return x;
}

std::function<void(const json&)> real(double& dst, std::function<bool(double)> ok, const char* rule) {
    return [&dst, ok = std::move(ok), rule](const json& v) {
        const double x = number(v);
        if (!ok(x)) {
            std::ostringstream os;
            os << "value " << x << " out of range, " << rule;
            throw std::invalid_argument(os.str());
        }
        dst = x;
    };
}

}  // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        static const char* sections[] = {"opo", "noise", "detection", "analyzer", "seed", "$schema"};
        bool known = false;
        for (const char* s : sections) known = known || key == s;
        if (!known) throw ConfigError(key, key + ": unknown section");
    }

    RunConfig c;
    auto positive = [](double x) { return x > 0.0; };
    auto nonneg = [](double x) { return x >= 0.0; };

    SectionReader(j, "opo")
        .bind("pump_ratio", real(c.opo.pump_ratio, [](double x) { return x >= 0.0 && x < 1.0; },
                                 "expected 0 <= pump_ratio < 1 (below threshold)"))
        .bind("cavity_hwhm_hz", real(c.opo.cavity_hwhm, positive, "expected > 0"))
        .bind("escape_efficiency",
              real(c.opo.escape_efficiency, [](double x) { return x > 0.0 && x <= 1.0; },
                   "expected in (0, 1]"))
        .finish();

    SectionReader(j, "noise")
        .bind("relax_center_hz", real(c.noise.relax_center, positive, "expected > 0"))
        .bind("relax_fwhm_hz", real(c.noise.relax_fwhm, positive, "expected > 0"))
        .bind("relax_amp_plus", real(c.noise.relax_amp_plus, nonneg, "expected >= 0"))
        .bind("relax_amp_minus", real(c.noise.relax_amp_minus, nonneg, "expected >= 0"))
        .bind("lf_knee_hz", real(c.noise.lf_knee, positive, "expected > 0"))
        .bind("lf_exponent", real(c.noise.lf_exponent, [](double) { return true; }, ""))
        .bind("lf_amp", real(c.noise.lf_amp, nonneg, "expected >= 0"))
        .finish();

    SectionReader(j, "detection")
        .bind("quantum_efficiency",
              real(c.detection.quantum_efficiency, [](double x) { return x > 0.0 && x <= 1.0; },
                   "expected in (0, 1]"))
        .bind("visibility", real(c.detection.visibility, [](double x) { return x > 0.0 && x <= 1.0; },
                                 "expected in (0, 1]"))
        .bind("dark_noise_db", real(c.detection.dark_noise_db, [](double x) { return x < 0.0; },
                                    "expected < 0 dB relative to shot noise"))
        .finish();

    double points = static_cast<double>(c.analyzer.points);
    double samples = static_cast<double>(c.analyzer.samples);
    SectionReader(j, "analyzer")
        .bind("rbw_hz", real(c.analyzer.rbw, positive, "expected > 0"))
        .bind("vbw_hz", real(c.analyzer.vbw, positive, "expected > 0"))
        .bind("points", real(points, [](double x) { return x >= 2 && x == std::floor(x); },
                             "expected an integer >= 2"))
        .bind("sample_rate_hz", real(c.analyzer.sample_rate, positive, "expected > 0"))
        .bind("samples", real(samples,
                              [](double x) {
                                  if (x < 2 || x != std::floor(x) || x > 1e12) return false;
                                  const auto n = static_cast<std::uint64_t>(x);
                                  return (n & (n - 1)) == 0;
                              },
                              "expected a power of two"))
        .bind("dark_correct", [&](const json& v) { c.analyzer.dark_correct = v.get<bool>(); })
        .finish();
    c.analyzer.points = static_cast<std::size_t>(points);
    c.analyzer.samples = static_cast<std::size_t>(samples);
    if (c.analyzer.vbw > c.analyzer.rbw)
        throw ConfigError("analyzer.vbw_hz", "analyzer.vbw_hz: must not exceed analyzer.rbw_hz");

    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned()) throw ConfigError("seed", "seed: expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(is, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
    return {
        {"opo",
         {{"pump_ratio", c.opo.pump_ratio},
          {"cavity_hwhm_hz", c.opo.cavity_hwhm},
          {"escape_efficiency", c.opo.escape_efficiency}}},
        {"noise",
         {{"relax_center_hz", c.noise.relax_center},
          {"relax_fwhm_hz", c.noise.relax_fwhm},
          {"relax_amp_plus", c.noise.relax_amp_plus},
          {"relax_amp_minus", c.noise.relax_amp_minus},
          {"lf_knee_hz", c.noise.lf_knee},
          {"lf_exponent", c.noise.lf_exponent},
          {"lf_amp", c.noise.lf_amp}}},
        {"detection",
         {{"quantum_efficiency", c.detection.quantum_efficiency},
          {"visibility", c.detection.visibility},
          {"dark_noise_db", c.detection.dark_noise_db}}},
        {"analyzer",
         {{"rbw_hz", c.analyzer.rbw},
          {"vbw_hz", c.analyzer.vbw},
          {"points", c.analyzer.points},
          {"sample_rate_hz", c.analyzer.sample_rate},
          {"samples", c.analyzer.samples},
          {"dark_correct", c.analyzer.dark_correct}}},
        {"seed", c.seed},
    };
}

}  // namespace sqz
