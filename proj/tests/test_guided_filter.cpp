#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfdcp/filters.hpp"
#include "pfdcp/guided_filter.hpp"

using namespace pfdcp;

TEST_CASE("constant guide degenerates to a double box mean") {
    std::mt19937 rng(2);
    GrayImage guide(16, 16, 0.5);
    GrayImage input = oracle::random_gray(16, 16, rng);
    GrayImage out = guided_filter(guide, input, {3, 1e-4});
    GrayImage expected = box_filter(box_filter(input, 3), 3);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        CHECK(std::abs(out.data[i] - expected.data[i]) <= 1e-9);
}

TEST_CASE("constant guide and input is a fixed point") {
    GrayImage c(12, 9, 0.42);
    GrayImage out = guided_filter(c, c, {4, 1e-4});
    for (double v : out.data) CHECK(v == doctest::Approx(0.42).epsilon(1e-12));
}

TEST_CASE("self-guidance with tiny eps approaches the identity") {
    std::mt19937 rng(8);
    GrayImage img = oracle::random_gray(32, 32, rng);
    GrayImage out = guided_filter(img, img, {2, 1e-12});
    // every window of a noisy image has variance >> eps
    for (std::size_t i = 0; i < img.data.size(); ++i)
        CHECK(std::abs(out.data[i] - img.data[i]) <= 1e-4);
}

TEST_CASE("matches the per-window regression oracle") {
    std::mt19937 rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        GrayImage guide = oracle::random_gray(32, 32, rng);
        GrayImage input = oracle::random_gray(32, 32, rng);
        GrayImage fast = guided_filter(guide, input, {4, 1e-3});
        GrayImage naive = oracle::guided_filter_naive(guide, input, 4, 1e-3);
        for (std::size_t i = 0; i < fast.data.size(); ++i)
            CHECK(std::abs(fast.data[i] - naive.data[i]) <= 1e-6);
    }
}

TEST_CASE("linear in the filtered input") {
    std::mt19937 rng(21);
    GrayImage guide = oracle::random_gray(24, 24, rng);
    GrayImage p1 = oracle::random_gray(24, 24, rng);
    GrayImage p2 = oracle::random_gray(24, 24, rng);
    const double alpha = 0.3, beta = 0.6;

    GrayImage combo(24, 24);
    for (std::size_t i = 0; i < combo.data.size(); ++i)
        combo.data[i] = alpha * p1.data[i] + beta * p2.data[i];

    const GuidedFilterParams params{5, 1e-3};
    GrayImage f_combo = guided_filter(guide, combo, params);
    GrayImage f1 = guided_filter(guide, p1, params);
    GrayImage f2 = guided_filter(guide, p2, params);
    for (std::size_t i = 0; i < f_combo.data.size(); ++i)
        CHECK(std::abs(f_combo.data[i] - (alpha * f1.data[i] + beta * f2.data[i])) <= 1e-6);
}

TEST_CASE("argument validation") {
    GrayImage a(8, 8, 0.5), b(7, 8, 0.5);
    CHECK_THROWS_AS(guided_filter(a, b, {3, 1e-4}), std::invalid_argument);
    CHECK_THROWS_AS(guided_filter(a, a, {0, 1e-4}), std::invalid_argument);
    CHECK_THROWS_AS(guided_filter(a, a, {3, 0.0}), std::invalid_argument);
}
