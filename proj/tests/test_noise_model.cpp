#include "sqz/detection.hpp"
#include "sqz/errors.hpp"
#include "sqz/noise_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace sqz;

TEST_CASE("excess_noise shape") {
    const ClassicalNoiseConfig c;
    const double peak = c.relax_amp_minus;

    SUBCASE("localized") {
        CHECK(excess_noise(c, 100e6, Mode::minus) < 1e-3 * peak);
        CHECK(excess_noise(c, 20e6, Mode::plus) < 1e-3 * peak);
    }
    SUBCASE("peak value at the center") {
        const double lf = c.lf_amp * std::pow(c.lf_knee / c.relax_center, c.lf_exponent);
        CHECK(excess_noise(c, c.relax_center, Mode::minus) == doctest::Approx(peak + lf).epsilon(1e-14));
        CHECK(excess_noise(c, c.relax_center, Mode::plus) == doctest::Approx(c.relax_amp_plus + lf).epsilon(1e-14));
    }
    SUBCASE("half maximum at +/- fwhm/2") {
        ClassicalNoiseConfig only_peak = c;
        only_peak.lf_amp = 0.0;
        for (double sign : {-1.0, 1.0}) {
            const double f = c.relax_center + sign * c.relax_fwhm / 2.0;
            CHECK(excess_noise(only_peak, f, Mode::minus) == doctest::Approx(peak / 2.0).epsilon(1e-14));
        }
    }
    SUBCASE("low-frequency term equals lf_amp at the knee") {
        ClassicalNoiseConfig only_lf = c;
        only_lf.relax_amp_minus = 0.0;
        CHECK(excess_noise(only_lf, c.lf_knee, Mode::minus) == doctest::Approx(c.lf_amp).epsilon(1e-14));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(excess_noise(c, 0.0, Mode::plus), DomainError);
        CHECK_THROWS_AS(excess_noise(c, -5.0, Mode::plus), DomainError);
    }
    SUBCASE("nonnegative") {
        for (double f = 1.0; f < 1e9; f *= 1.07) {
            CHECK(excess_noise(c, f, Mode::plus) >= 0.0);
            CHECK(excess_noise(c, f, Mode::minus) >= 0.0);
        }
    }
}

TEST_CASE("total_spectrum") {
    const OpoParams p;
    const ClassicalNoiseConfig c;

    SUBCASE("quiet config reduces to the quantum spectrum") {
        const auto s = total_spectrum(p, ClassicalNoiseConfig::quiet(), Mode::minus);
        for (double f : {1.0, 1e3, 1e5, 1e6, 3.5e6, 1e8}) CHECK(s(f) == squeezed_variance(p, f));
    }
    SUBCASE("additivity") {
        for (Mode m : {Mode::plus, Mode::minus}) {
            const auto s = total_spectrum(p, c, m);
            for (double f = 10.0; f < 5e8; f *= 1.3)
                CHECK(std::abs(s(f) - squeezed_variance(p, f) - excess_noise(c, f, m)) <= 1e-12 * std::max(1.0, s(f)));
        }
    }
    SUBCASE("relaxation peak is weaker on the plus mode") {
        CHECK(total_spectrum(p, c, Mode::minus)(1e6) > total_spectrum(p, c, Mode::plus)(1e6));
    }
    SUBCASE("3 dB squeezing around 100 kHz") {
        CHECK(total_spectrum(p, c, Mode::plus)(100e3) <= 0.54);
        CHECK(total_spectrum(p, c, Mode::minus)(100e3) <= 0.54);
    }
    SUBCASE("crosses shot noise between 40 and 60 kHz") {
        for (Mode m : {Mode::plus, Mode::minus}) {
            const auto s = total_spectrum(p, c, m);
            double lo = 40e3, hi = 60e3;
            REQUIRE(s(lo) > 1.0);
            REQUIRE(s(hi) < 1.0);
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (s(mid) > 1.0 ? lo : hi) = mid;
            }
            CHECK(lo >= 40e3);
            CHECK(hi <= 60e3);
        }
    }
    SUBCASE("invalid configs") {
        ClassicalNoiseConfig bad = c;
        bad.relax_fwhm = 0.0;
        CHECK_THROWS_AS(total_spectrum(p, bad, Mode::plus), DomainError);
        bad = c;
        bad.lf_amp = -1.0;
        CHECK_THROWS_AS(total_spectrum(p, bad, Mode::plus), DomainError);
        CHECK_THROWS_AS(total_spectrum({1.0, 50e6, 0.9}, c, Mode::plus), ThresholdError);
    }
}

TEST_CASE("mode names") {
    CHECK(mode_from_string("plus") == Mode::plus);
    CHECK(mode_from_string("minus") == Mode::minus);
    CHECK(to_string(Mode::plus) == "plus");
    CHECK_THROWS_AS(mode_from_string("diagonal"), DomainError);
}
