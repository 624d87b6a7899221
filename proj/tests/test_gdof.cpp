#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rxcoop/gdof.hpp"

using namespace rxcoop;

TEST_CASE("formula: exact points") {
    SUBCASE("alpha 1/2, kappa 1/4 gives exactly 3/4") {
        const GdofPoint p = gdof_formula(0.5, 0.25);
        CHECK(p.d == 0.75);
        CHECK(p.binding == "max_split_plus_kappa");
        CHECK_FALSE(p.phase_caveat);
    }
    SUBCASE("alpha 2/3, kappa 1/3 gives exactly 5/6") {
        const GdofPoint p = gdof_formula(2.0 / 3.0, 1.0 / 3.0);
        CHECK(p.d == 5.0 / 6.0);
        CHECK(p.binding == "one_minus_half_excess");
    }
    SUBCASE("interference-free") {
        CHECK(gdof_formula(0.0, 0.0).d == 1.0);
    }
    SUBCASE("very strong interference, no cooperation") {
        const GdofPoint p = gdof_formula(2.0, 0.0);
        CHECK(p.d == 1.0);
        CHECK(p.binding == "one_plus_kappa");
    }
    SUBCASE("alpha = 1 carries the phase caveat") {
        CHECK(gdof_formula(1.0, 0.5).phase_caveat);
        CHECK_FALSE(gdof_formula(0.999, 0.5).phase_caveat);
    }
    SUBCASE("invalid exponents rejected") {
        CHECK_THROWS_AS(gdof_formula(-0.1, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(gdof_formula(0.5, -1.0), std::invalid_argument);
    }
}

TEST_CASE("saturation point and slopes") {
    SUBCASE("curve saturation") {
        const GdofCurve half = gdof_curve(0.5, {0.0, 0.25, 0.5, 0.75});
        CHECK(half.kappa_star == doctest::Approx(0.5));
        const GdofCurve two_thirds = gdof_curve(2.0 / 3.0, {0.0, 0.5, 1.0});
        CHECK(two_thirds.kappa_star == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("slope 1 below saturation at alpha = 1/2, then 0") {
        for (double k = 0.0; k < 0.5 - 0.011; k += 0.01) {
            const double slope =
                (gdof_formula(0.5, k + 0.01).d - gdof_formula(0.5, k).d) / 0.01;
            CHECK(slope == doctest::Approx(1.0).epsilon(1e-9));
        }
        const double after =
            (gdof_formula(0.5, 0.8).d - gdof_formula(0.5, 0.51).d);
        CHECK(after == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("slope 1/2 below saturation at alpha = 2/3, then 0") {
        for (double k = 0.0; k < 2.0 / 3.0 - 0.011; k += 0.01) {
            const double slope =
                (gdof_formula(2.0 / 3.0, k + 0.01).d -
                 gdof_formula(2.0 / 3.0, k).d) /
                0.01;
            CHECK(slope == doctest::Approx(0.5).epsilon(1e-9));
        }
        CHECK(gdof_formula(2.0 / 3.0, 1.0).d ==
              doctest::Approx(gdof_formula(2.0 / 3.0, 2.0 / 3.0).d));
    }
    SUBCASE("alpha 0: flat at 1 for every kappa") {
        for (double k = 0.0; k <= 2.0; k += 0.1) {
            CHECK(gdof_formula(0.0, k).d == 1.0);
        }
        CHECK(kappa_star(0.0) == 0.0);
    }
}

TEST_CASE("d is continuous, nondecreasing and concave in kappa") {
    const double dk = 0.01;
    for (double alpha = 0.0; alpha <= 3.0 + 1e-12; alpha += 0.05) {
        double prev = gdof_formula(alpha, 0.0).d;
        double prev_slope = 1e9;
        for (double k = dk; k <= 2.0 + 1e-12; k += dk) {
            const double cur = gdof_formula(alpha, k).d;
            // continuity at grid scale: steps bounded by the max slope (1)
            CHECK(std::abs(cur - prev) <= dk + 1e-12);
            CHECK(cur >= prev - 1e-12);  // nondecreasing
            const double slope = (cur - prev) / dk;
            CHECK(slope <= prev_slope + 1e-9);  // concave
            prev_slope = slope;
            prev = cur;
        }
    }
}

TEST_CASE("d never exceeds max(1, alpha) and never falls below d(alpha, 0)") {
    for (double alpha = 0.0; alpha <= 3.0; alpha += 0.07) {
        const double base = gdof_formula(alpha, 0.0).d;
        for (double k = 0.0; k <= 2.0; k += 0.11) {
            const double d = gdof_formula(alpha, k).d;
            CHECK(d <= std::max(1.0, alpha) + 1e-12);
            CHECK(d >= base - 1e-12);
        }
    }
}

TEST_CASE("numeric bounds sandwich the formula") {
    SUBCASE("gap contract after normalization") {
        const auto pts = gdof_numeric(0.5, 0.25, {40.0, 80.0, 120.0}, 8, 1);
        for (const auto& p : pts) {
            const double log2snr = p.snr_db / 10.0 * std::log2(10.0);
            CHECK(p.r_lo <= p.r_hi + 1e-12);
            CHECK(p.r_hi - p.r_lo <= 3.0 / log2snr + 1e-9);
        }
    }
    SUBCASE("alpha 1/2, kappa 1/4 at 120 dB is near 3/4") {
        const auto pts = gdof_numeric(0.5, 0.25, {120.0}, 64, 7);
        CHECK(std::abs(pts[0].r_lo - 0.75) <= 0.15);
        CHECK(std::abs(pts[0].r_hi - 0.75) <= 0.15);
    }
    SUBCASE("alpha 0 approaches the single-user limit") {
        // With INR pinned at 1 the binding outer bound is
        // log2(1 + INR + SNR/(1+INR)) ~ log2(SNR) - 1, so the normalized
        // bound sits 1/log2(SNR) below 1 at finite SNR.
        const auto pts = gdof_numeric(0.0, 0.0, {120.0}, 16, 3);
        const double log2snr = 12.0 * std::log2(10.0);
        CHECK(pts[0].r_hi ==
              doctest::Approx(1.0 - 1.0 / log2snr).epsilon(1e-3));
        CHECK(std::abs(pts[0].r_hi - 1.0) <= 0.03);
    }
    SUBCASE("deterministic in the seed") {
        const auto a = gdof_numeric(0.5, 0.25, {60.0}, 16, 99);
        const auto b = gdof_numeric(0.5, 0.25, {60.0}, 16, 99);
        CHECK(a[0].r_lo == b[0].r_lo);
        CHECK(a[0].r_hi == b[0].r_hi);
    }
    SUBCASE("out-of-range snr rejected") {
        CHECK_THROWS_AS(gdof_numeric(0.5, 0.25, {0.0}, 4, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(gdof_numeric(0.5, 0.25, {121.0}, 4, 0),
                        std::invalid_argument);
    }
}
