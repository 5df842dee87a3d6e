#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "pfdcp/metrics.hpp"
#include "pfdcp/synth.hpp"

using namespace pfdcp;

TEST_CASE("psnr") {
    std::mt19937 rng(41);

    SUBCASE("identical images are infinite") {
        RgbImage a = oracle::random_rgb(8, 8, rng);
        CHECK(std::isinf(psnr(a, a)));
    }
    SUBCASE("uniform +0.1 offset is exactly 20 dB") {
        RgbImage a(16, 16);
        std::uniform_real_distribution<double> dist(0.0, 0.9);
        for (double& v : a.data) v = dist(rng);
        RgbImage b = a;
        for (double& v : b.data) v += 0.1;
        CHECK(std::abs(psnr(a, b) - 20.0) <= 1e-9);
    }
    SUBCASE("single-sample error has the closed-form value") {
        const int w = 8, h = 4;
        RgbImage a(w, h, 0.0);
        RgbImage b = a;
        b.at(2, 3, 1) = 1.0;
        const double expected = 10.0 * std::log10(3.0 * w * h);
        CHECK(psnr(a, b) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("symmetric") {
        RgbImage a = oracle::random_rgb(12, 12, rng);
        RgbImage b = oracle::random_rgb(12, 12, rng);
        CHECK(psnr(a, b) == psnr(b, a));
    }
    SUBCASE("dimension mismatch throws") {
        RgbImage a(4, 4, 0.5), b(4, 5, 0.5);
        CHECK_THROWS_AS(psnr(a, b), std::invalid_argument);
    }
}

TEST_CASE("ssim") {
    std::mt19937 rng(43);

    SUBCASE("identical images score 1") {
        RgbImage a = oracle::random_rgb(16, 16, rng);
        CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant pair has the luminance-only closed form") {
        RgbImage a(16, 16, 0.5), b(16, 16, 0.6);
        const double c1 = 0.01 * 0.01;
        const double expected =
            (2.0 * 0.5 * 0.6 + c1) / (0.5 * 0.5 + 0.6 * 0.6 + c1);
        CHECK(ssim(a, b) == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("matches the direct reference implementation") {
        for (int rep = 0; rep < 5; ++rep) {
            RgbImage a = oracle::random_rgb(32, 32, rng);
            RgbImage b = oracle::random_rgb(32, 32, rng);
            CHECK(std::abs(ssim(a, b) - oracle::ssim_reference(a, b)) <= 1e-4);
        }
    }
    SUBCASE("symmetric and bounded above by 1") {
        RgbImage a = oracle::random_rgb(20, 20, rng);
        RgbImage b = oracle::random_rgb(20, 20, rng);
        CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
        CHECK(ssim(a, b) <= 1.0);
    }
    SUBCASE("images below the window size are rejected") {
        RgbImage a(10, 16, 0.5);
        CHECK_THROWS_AS(ssim(a, a), std::invalid_argument);
    }
}

TEST_CASE("synthesize_haze") {
    std::mt19937 rng(47);
    RgbImage clear = oracle::random_rgb(12, 12, rng);
    SynthSpec spec;
    spec.atmosphere = {0.8, 0.8, 0.8};

    SUBCASE("t = 1 is the identity") {
        spec.t_const = 1.0;
        CHECK(synthesize_haze(clear, spec).data == clear.data);
    }
    SUBCASE("t = 0 is the atmosphere everywhere") {
        spec.t_const = 1e-12;
        RgbImage hazy = synthesize_haze(clear, spec);
        for (double v : hazy.data) CHECK(v == doctest::Approx(0.8).epsilon(1e-9));
    }
    SUBCASE("midpoint blend") {
        RgbImage j(4, 4, 0.2);
        spec.t_const = 0.5;
        for (double v : synthesize_haze(j, spec).data)
            CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("pointwise convex combination of J and A") {
        spec.t_map = oracle::smooth_field(12, 12, 0.1, 0.95, rng);
        RgbImage hazy = synthesize_haze(clear, spec);
        for (std::size_t i = 0; i < clear.pixel_count(); ++i)
            for (int c = 0; c < 3; ++c) {
                const double j = clear.data[i * 3 + c];
                const double lo = std::min(j, 0.8), hi = std::max(j, 0.8);
                CHECK(hazy.data[i * 3 + c] >= lo - 1e-12);
                CHECK(hazy.data[i * 3 + c] <= hi + 1e-12);
            }
    }
    SUBCASE("map dimension mismatch throws") {
        spec.t_map = GrayImage(5, 5, 0.5);
        CHECK_THROWS_AS(synthesize_haze(clear, spec), std::invalid_argument);
    }
}
