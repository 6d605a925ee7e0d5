#include <doctest.h>

#include <cmath>

#include "imgfilt/bilateral.hpp"
#include "imgfilt/linear.hpp"
#include "imgfilt/metrics.hpp"
#include "imgfilt/noise.hpp"
#include "imgfilt/synthetic.hpp"
#include "test_util.hpp"

using namespace imgfilt;

namespace {

GrayImage mirrored_horizontally(const GrayImage& img) {
    GrayImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) out.set(r, c, img.at(r, img.width() - 1 - c));
    }
    return out;
}

GrayImage two_level_step(int width, int height, int edge_col, Intensity low, Intensity high) {
    GrayImage img(width, height, low);
    for (int r = 0; r < height; ++r) {
        for (int c = edge_col; c < width; ++c) img.set(r, c, high);
    }
    return img;
}

int max_abs_diff(const GrayImage& a, const GrayImage& b) {
    int worst = 0;
    for (int r = 0; r < a.height(); ++r) {
        for (int c = 0; c < a.width(); ++c) {
            worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
        }
    }
    return worst;
}

BilateralParams random_params(SplitMix64& rng) {
    BilateralParams p;
    p.sigma_s = 0.5 + 3.0 * rng.next_unit();
    p.sigma_r = 5.0 + 100.0 * rng.next_unit();
    if (rng.next_bit()) p.radius = 1 + static_cast<int>(rng.next_below(4));
    p.spatial = rng.next_bit() ? SpatialKind::Gaussian : SpatialKind::Box;
    p.range = rng.next_bit() ? RangeKind::Gaussian : RangeKind::Tent;
    switch (rng.next_below(3)) {
        case 0: p.border = BorderPolicy::replicate(); break;
        case 1: p.border = BorderPolicy::mirror(); break;
        default: p.border = BorderPolicy::constant(static_cast<Intensity>(rng.next_below(256)));
    }
    return p;
}

}  // namespace

TEST_SUITE("bilateral") {

TEST_CASE("constant images are fixed points") {
    // Any value-preserving extension qualifies; a Constant border with a
    // foreign value injects genuine contrast at the edges by definition.
    SplitMix64 rng(61);
    const GrayImage img(14, 11, 93);
    for (int i = 0; i < 8; ++i) {
        BilateralParams p = random_params(rng);
        if (p.border.kind == BorderPolicy::Kind::Constant) p.border = BorderPolicy::constant(93);
        CHECK(bilateral_filter(img, p) == img);
    }
}

TEST_CASE("single pixel image is unchanged") {
    const GrayImage dot(1, 1, 201);
    CHECK(bilateral_filter(dot, BilateralParams{}) == dot);
    CHECK(bilateral_reference(dot, BilateralParams{}) == dot);
}

TEST_CASE("optimized path matches the nested-loop reference bit-exactly") {
    SplitMix64 rng(62);
    for (int draw = 0; draw < 20; ++draw) {
        const GrayImage img = test::random_image(rng, 16, 16);
        const BilateralParams p = random_params(rng);
        CHECK(bilateral_filter(img, p) == bilateral_reference(img, p));
    }
}

TEST_CASE("huge sigma_r degenerates to the gaussian blur") {
    SplitMix64 rng(63);
    const GrayImage img = test::random_image(rng, 24, 24);

    BilateralParams p;
    p.sigma_s = 2.0;
    p.sigma_r = 1e9;
    const GrayImage limit = bilateral_filter(img, p);
    const GrayImage gauss = gaussian_blur(img, {2.0, std::nullopt, BorderPolicy::replicate()});
    CHECK(max_abs_diff(limit, gauss) <= 1);
}

TEST_CASE("deviation from the gaussian limit shrinks as sigma_r grows") {
    const GrayImage noisy = add_gaussian_noise(
        two_level_step(32, 32, 16, 0, 255), 10.0, 99);
    const GrayImage gauss = gaussian_blur(noisy, {2.0, std::nullopt, BorderPolicy::replicate()});
    int prev = 256;
    for (const double sigma_r : {30.0, 100.0, 1e4, 1e9}) {
        BilateralParams p;
        p.sigma_s = 2.0;
        p.sigma_r = sigma_r;
        const int dev = max_abs_diff(bilateral_filter(noisy, p), gauss);
        CHECK(dev <= prev);
        prev = dev;
    }
    CHECK(prev <= 1);
}

TEST_CASE("clean step survives untouched at moderate sigma_r") {
    const GrayImage img = two_level_step(16, 16, 8, 0, 255);
    BilateralParams p;
    p.sigma_s = 2.0;
    p.sigma_r = 30.0;
    // Cross-side range weights are below 1e-15, so the weighted mean moves
    // every pixel by far less than half a level.
    const GrayImage out = bilateral_filter(img, p);
    CHECK(out == img);
    CHECK(bilateral_reference(img, p) == out);
}

TEST_CASE("output contracts into the local window range") {
    SplitMix64 rng(64);
    const GrayImage img = test::random_image(rng, 15, 12);
    BilateralParams p = random_params(rng);
    p.border = BorderPolicy::replicate();
    const int radius = p.resolved_radius();
    const GrayImage out = bilateral_filter(img, p);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            Intensity lo = 255;
            Intensity hi = 0;
            for (int dr = -radius; dr <= radius; ++dr) {
                for (int dc = -radius; dc <= radius; ++dc) {
                    const Intensity v = pixel_extended(img, {r + dr, c + dc}, p.border);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            CHECK(out.at(r, c) >= lo);
            CHECK(out.at(r, c) <= hi);
        }
    }
}

TEST_CASE("filtering commutes with horizontal mirroring") {
    SplitMix64 rng(65);
    const GrayImage img = test::random_image(rng, 13, 9);
    for (const auto& border : {BorderPolicy::mirror(), BorderPolicy::constant(80)}) {
        BilateralParams p;
        p.sigma_s = 1.5;
        p.sigma_r = 25.0;
        p.border = border;
        const GrayImage direct = bilateral_filter(img, p);
        const GrayImage round_trip =
            mirrored_horizontally(bilateral_filter(mirrored_horizontally(img), p));
        CHECK(direct == round_trip);
    }
}

TEST_CASE("surface-blur preset gates hard on contrast") {
    // Tent range weight is zero at and beyond sigma_r: the 255 outlier
    // contributes nothing to its 100-valued neighbors and vice versa.
    const GrayImage img = GrayImage::from_pixels(3, 1, {100, 100, 255});
    const BilateralParams p = BilateralParams::surface_blur(1.0, 30.0);
    CHECK(p.spatial == SpatialKind::Box);
    CHECK(p.range == RangeKind::Tent);
    const GrayImage out = bilateral_filter(img, p);
    CHECK(out.at(0, 0) == 100);
    CHECK(out.at(0, 1) == 100);
    CHECK(out.at(0, 2) == 255);
    CHECK(bilateral_reference(img, p) == out);
}

TEST_CASE("retains more edge contrast than the gaussian on a noisy step") {
    const GrayImage clean = two_level_step(64, 64, 32, 0, 255);
    const GrayImage noisy = add_gaussian_noise(clean, 10.0, 7);

    BilateralParams bp;
    bp.sigma_s = 2.0;
    bp.sigma_r = 30.0;
    const GrayImage bilateral = bilateral_filter(noisy, bp);
    const GrayImage gauss = gaussian_blur(noisy, {2.0, std::nullopt, BorderPolicy::replicate()});

    const double bilateral_contrast = edge_contrast(bilateral, 32, 4);
    const double gauss_contrast = edge_contrast(gauss, 32, 4);
    CHECK(bilateral_contrast > gauss_contrast);
}

TEST_CASE("edge_contrast measures strip mean difference") {
    const GrayImage step = make_step128();
    CHECK(edge_contrast(step, kStep128EdgeCol, 4) == doctest::Approx(128.0));
    CHECK(edge_contrast(step, kStep128EdgeCol, 64) == doctest::Approx(128.0));
    CHECK_THROWS_AS(edge_contrast(step, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(edge_contrast(step, 64, 0), std::invalid_argument);
}

TEST_CASE("row-parallel execution is byte-identical") {
    SplitMix64 rng(66);
    const GrayImage img = test::random_image(rng, 33, 27);
    BilateralParams p;
    p.sigma_s = 1.5;
    p.sigma_r = 20.0;
    CHECK(bilateral_filter(img, p, Threads{4}) == bilateral_filter(img, p));
}

TEST_CASE("parameter validation") {
    const GrayImage img(4, 4, 0);
    BilateralParams p;
    p.sigma_s = 0.0;
    CHECK_THROWS_AS(bilateral_filter(img, p), std::invalid_argument);
    p.sigma_s = 2.0;
    p.sigma_r = -1.0;
    CHECK_THROWS_AS(bilateral_filter(img, p), std::invalid_argument);
    p.sigma_r = 30.0;
    p.radius = 0;
    CHECK_THROWS_AS(bilateral_filter(img, p), std::invalid_argument);
    p.radius.reset();
    p.border = BorderPolicy::crop();
    CHECK_THROWS_AS(bilateral_filter(img, p), std::invalid_argument);
}

}  // TEST_SUITE
