#include "oracles.hpp"
#include "sqz/detection.hpp"
#include "sqz/errors.hpp"
#include "sqz/model_chain.hpp"
#include "sqz/pulsed.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sqz;

namespace {

// Computed once with oracle::brute_force_pulsed (trapezoid, 1e7 points to
// 1 GHz, split at 50 kHz, plus the asymptotic tail) for the shot-limited
// below 50 kHz / -3 dB above model at T = 1 us.
constexpr double kReferenceModelVariance = 2.754660136210e-07;
constexpr double kReferenceModelFactor = 1.815105949;

double reference_oracle() {
    const double g = std::pow(10.0, -0.3);
    return oracle::brute_force_pulsed([g](double f) { return f < 50e3 ? 1.0 : g; }, 1e-6, {50e3}, 1e9,
                                      10'000'001, g);
}

}  // namespace

TEST_CASE("frozen oracle value reproduces") {
    const double v = reference_oracle();
    CHECK(v == doctest::Approx(kReferenceModelVariance).epsilon(1e-11));
    CHECK(0.5e-6 / v == doctest::Approx(kReferenceModelFactor).epsilon(1e-9));
}

TEST_CASE("reference piecewise model against the brute-force oracle") {
    const auto r = pulsed_analysis(reference_piecewise_model().to_spectrum(), {1e-6});
    CHECK(std::abs(r.variance / kReferenceModelVariance - 1.0) <= 1e-5);
    CHECK(r.improvement_factor == doctest::Approx(kReferenceModelFactor).epsilon(1e-5));
    CHECK(r.improvement_factor > 1.6);
    CHECK(r.improvement_factor < 2.0);
    CHECK(r.error_estimate < 1e-6 * r.variance);
}

TEST_CASE("flat spectra") {
    const auto one = NoiseSpectrum::constant(1.0);
    CHECK(pulsed_variance(one, {1e-6}) == doctest::Approx(5e-7).epsilon(1e-12));
    CHECK(improvement_factor(one, {1e-6}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pulsed_variance(NoiseSpectrum::constant(0.5), {1e-6}) ==
          doctest::Approx(0.5 * pulsed_variance(one, {1e-6})).epsilon(1e-12));
    CHECK(improvement_factor(NoiseSpectrum::constant(from_db(-3.0)), {1e-6}) ==
          doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-9));
    CHECK(improvement_factor(NoiseSpectrum::constant(0.501), {1e-6}) == doctest::Approx(1.996).epsilon(1e-3));

    SUBCASE("closed form over five decades of T, proportional to T") {
        for (double T = 1e-8; T <= 1e-3; T *= std::sqrt(10.0)) {
            const double v = pulsed_variance(one, {T});
            CHECK(std::abs(v / (0.5 * T) - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("linearity and monotonicity") {
    const RunConfig cfg;
    const auto base = clamp_below_knee(detected_spectrum(cfg, Mode::minus), cfg.noise.lf_knee);
    const PulsedWindow w{1e-6};
    const double v = pulsed_variance(base, w);
    for (double a : {0.1, 0.37, 2.0, 13.0})
        CHECK(std::abs(pulsed_variance(base.scaled(a), w) / (a * v) - 1.0) <= 1e-9);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double lo = 0.2 + 0.5 * u(rng);
        const double bump = u(rng);
        const double f0 = 1e5 + 5e6 * u(rng);
        const auto s1 = NoiseSpectrum([=](double f) { return lo + 0.1 * std::exp(-f / 1e7); });
        const auto s2 = NoiseSpectrum([=](double f) {
            const double d = (f - f0) / 1e5;
            return lo + 0.1 * std::exp(-f / 1e7) + bump / (1.0 + d * d);
        });
        CHECK(pulsed_variance(s1, w) <= pulsed_variance(s2, w));
    }
}

TEST_CASE("serial and parallel quadrature agree bit for bit") {
    const auto s = reference_piecewise_model().to_spectrum();
    const auto a = pulsed_analysis(s, {2e-6}, {}, Execution::parallel);
    const auto b = pulsed_analysis(s, {2e-6}, {}, Execution::serial);
    CHECK(a.variance == b.variance);
    CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("smooth model spectrum agrees with the oracle") {
    const RunConfig cfg;
    const auto s = clamp_below_knee(detected_spectrum(cfg, Mode::plus), cfg.noise.lf_knee);
    const double fast = pulsed_variance(s, {1e-6});
    // the Lorentzian peak and cavity roll-off are resolved by a 100 Hz grid
    const double slow = oracle::brute_force_pulsed([&](double f) { return s(f); }, 1e-6, {cfg.noise.lf_knee}, 1e9,
                                                   10'000'001, s(1e9));
    CHECK(std::abs(fast / slow - 1.0) <= 1e-5);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(pulsed_variance(NoiseSpectrum::constant(1.0), {0.0}), DomainError);
    CHECK_THROWS_AS(pulsed_variance(NoiseSpectrum::constant(-1.0), {1e-6}), DomainError);
    CHECK_THROWS_AS(pulsed_variance(NoiseSpectrum([](double f) { return 1.0 / (f * f); }), {1e-6}), DomainError);
    // the raw model diverges at DC through the 1/f^2 technical noise
    const RunConfig cfg;
    CHECK_THROWS_AS(pulsed_variance(source_spectrum(cfg, Mode::minus), {1e-6}), DomainError);
    CHECK_NOTHROW(pulsed_variance(clamp_below_knee(source_spectrum(cfg, Mode::minus), cfg.noise.lf_knee), {1e-6}));
    PiecewiseSpectrum bad{{5e4, 1e4}, {1.0, 0.5}, 0.5};
    CHECK_THROWS_AS(bad.to_spectrum(), DomainError);
    PiecewiseSpectrum mismatch{{5e4}, {1.0, 0.5}, 0.5};
    CHECK_THROWS_AS(mismatch.to_spectrum(), DomainError);
}
