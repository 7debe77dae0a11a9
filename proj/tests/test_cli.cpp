#include "cli.hpp"
#include "sqz/detection.hpp"
#include "sqz/model_chain.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace sqz;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sqz_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("cli pulsed") {
    SUBCASE("flat spectra") {
        auto r = run_cli({"--format", "json", "pulsed", "--flat", "1.0", "--T", "1e-6"});
        REQUIRE(r.code == 0);
        CHECK(json::parse(r.out)["improvement_factor"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
        r = run_cli({"--format", "json", "pulsed", "--flat", "0.501", "--T", "1e-6"});
        CHECK(json::parse(r.out)["improvement_factor"].get<double>() == doctest::Approx(1.995).epsilon(1e-3));
    }
    SUBCASE("reference example reports both factors") {
        auto r = run_cli({"--format", "json", "pulsed", "--reference-example"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        CHECK(j["reported_factor"].get<double>() == 1.7);
        CHECK(std::abs(j["improvement_factor"].get<double>() / j["oracle_factor"].get<double>() - 1.0) <= 1e-5);
        const auto text = run_cli({"pulsed", "--reference-example"});
        CHECK(text.out.find("1.7") != std::string::npos);
    }
    SUBCASE("inline piecewise equals the preset") {
        auto a = run_cli({"--format", "json", "pulsed", "--breakpoints", "5e4", "--values", "1.0", "--tail",
                          std::to_string(from_db(-3.0))});
        auto b = run_cli({"--format", "json", "pulsed", "--reference-example"});
        CHECK(json::parse(a.out)["variance"].get<double>() ==
              doctest::Approx(json::parse(b.out)["variance"].get<double>()).epsilon(1e-9));
    }
    SUBCASE("model spectrum needs the feedback clamp") {
        CHECK(run_cli({"pulsed", "--model", "minus"}).code == cli::numerical_error);
        CHECK(run_cli({"pulsed", "--model", "minus", "--assume-feedback"}).code == 0);
    }
    SUBCASE("usage errors") {
        CHECK(run_cli({"pulsed"}).code == cli::config_error);
        CHECK(run_cli({"pulsed", "--flat", "1", "--reference-example"}).code == cli::config_error);
        CHECK(run_cli({"pulsed", "--flat", "-1"}).code == cli::numerical_error);
        CHECK(run_cli({"nonsense"}).code == cli::config_error);
    }
}

TEST_CASE("cli spectrum") {
    SUBCASE("default config over the wide band") {
        const auto dir = scratch("spectrum");
        const auto r = run_cli({"--out", dir.string(), "--format", "json", "spectrum"});
        REQUIRE(r.code == 0);
        const auto ins = read_json(dir / "inseparability.json");
        const auto freqs = ins["freqs"].get<std::vector<double>>();
        const auto analytic = ins["analytic"].get<std::vector<double>>();
        REQUIRE(freqs.size() == 401);
        CHECK(freqs.front() == 300e3);
        CHECK(freqs.back() == 10e6);
        for (std::size_t i = 0; i < freqs.size(); ++i)
            if (std::abs(freqs[i] - 1e6) >= 300e3) CHECK(analytic[i] <= 0.4);
        const auto trace = read_json(dir / "trace_minus.json");
        CHECK(trace["rbw"].get<double>() == 100e3);
        CHECK(trace["vbw"].get<double>() == 300.0);

        // deterministic given config and seed
        const auto again = scratch("spectrum2");
        run_cli({"--out", again.string(), "--format", "json", "spectrum"});
        CHECK(slurp(dir / "trace_minus.json") == slurp(again / "trace_minus.json"));
        run_cli({"--out", again.string(), "--format", "json", "--seed", "5", "spectrum"});
        CHECK(slurp(dir / "trace_minus.json") != slurp(again / "trace_minus.json"));
    }
    SUBCASE("no pump and no excess noise gives shot noise everywhere") {
        const auto dir = scratch("vacuum");
        write_text(dir / "cfg.json", R"({"opo": {"pump_ratio": 0.0},
            "noise": {"relax_amp_plus": 0, "relax_amp_minus": 0, "lf_amp": 0}})");
        const auto r = run_cli({"--config", (dir / "cfg.json").string(), "--out", dir.string(), "spectrum",
                                "--band", "low"});
        REQUIRE(r.code == 0);
        std::istringstream analytic(slurp(dir / "spectrum_analytic.csv"));
        std::string line;
        std::getline(analytic, line);
        while (std::getline(analytic, line)) {
            std::istringstream cols(line);
            std::string cell;
            std::getline(cols, cell, ',');
            while (std::getline(cols, cell, ',')) CHECK(std::abs(std::stod(cell)) < 1e-12);
        }

        for (const char* name : {"trace_plus.csv", "trace_minus.csv"}) {
            std::istringstream is(slurp(dir / name));
            std::getline(is, line);
            double sum = 0.0, sq = 0.0;
            int n = 0;
            while (std::getline(is, line)) {
                const double v = std::stod(line.substr(line.find(',') + 1));
                sum += v;
                sq += v * v;
                ++n;
            }
            const double mean = sum / n;
            const double sd = std::sqrt(sq / n - mean * mean);
            // 150 video averages on both signal and shot sweeps, dark-corrected: ~0.6 dB spread
            CHECK(std::abs(mean) < 0.15);
            CHECK(sd < 1.0);
        }
    }
    SUBCASE("errors") {
        const auto dir = scratch("spectrum_err");
        CHECK(run_cli({"--out", dir.string(), "spectrum", "--start", "5e6", "--stop", "1e6"}).code ==
              cli::config_error);
        CHECK(run_cli({"--out", dir.string(), "spectrum", "--start", "5e6"}).code == cli::config_error);
        write_text(dir / "bad.json", R"({"detection": {"visibilty": 0.9}})");
        const auto r = run_cli({"--config", (dir / "bad.json").string(), "spectrum"});
        CHECK(r.code == cli::config_error);
        CHECK(r.err.find("detection.visibilty") != std::string::npos);
        CHECK(run_cli({"--config", (dir / "missing.json").string(), "spectrum"}).code == cli::io_error);
    }
}

TEST_CASE("cli synth and analyze round trip") {
    const auto dir = scratch("roundtrip");
    const std::string out = dir.string();
    REQUIRE(run_cli({"--out", out, "synth", "--mode", "plus"}).code == 0);
    REQUIRE(run_cli({"--out", out, "synth", "--shot"}).code == 0);
    const auto r = run_cli({"--out", out, "--format", "json", "analyze", (dir / "series_plus.sqts").string(),
                            "--shot", (dir / "shot.sqts").string(), "--start", "3e5", "--stop", "1e7"});
    REQUIRE(r.code == 0);

    const auto trace = read_json(dir / "trace.json");
    const auto freqs = trace["freqs"].get<std::vector<double>>();
    const auto values = trace["values_db"].get<std::vector<double>>();
    const auto model = detected_spectrum(RunConfig{}, Mode::plus);
    REQUIRE(freqs.size() > 150);
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        // the 1 MHz peak is narrower than the analysis window; compare away from it
        if (std::abs(freqs[i] - 1e6) < 300e3) continue;
        CHECK(std::abs(values[i] - to_db(model(freqs[i]))) <= 0.3);
    }

    SUBCASE("same seed, identical bytes") {
        const auto again = scratch("roundtrip2");
        run_cli({"--out", again.string(), "synth", "--mode", "plus"});
        CHECK(slurp(dir / "series_plus.sqts") == slurp(again / "series_plus.sqts"));
    }
    SUBCASE("corrupt magic is a format error naming the offset") {
        auto bytes = slurp(dir / "series_plus.sqts");
        bytes[0] = 'Z';
        write_text(dir / "corrupt.sqts", bytes);
        const auto bad = run_cli({"--out", out, "analyze", (dir / "corrupt.sqts").string()});
        CHECK(bad.code == cli::io_error);
        CHECK(bad.err.find("byte 0") != std::string::npos);
    }
}

TEST_CASE("cli criteria") {
    const auto r = run_cli({"--format", "json", "criteria", "--freq", "3.5e6,1e5"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["points"][0]["inseparability"].get<double>() == doctest::Approx(0.3322).epsilon(1e-3));
    CHECK(j["points"][0]["entangled"].get<bool>());
    CHECK(j["total_efficiency"].get<double>() == doctest::Approx(0.9 * 0.95 * 0.97 * 0.97).epsilon(1e-12));
}
