#include <doctest.h>

#include <cmath>

#include "imgfilt/median.hpp"
#include "imgfilt/metrics.hpp"
#include "imgfilt/noise.hpp"
#include "imgfilt/synthetic.hpp"
#include "test_util.hpp"

using namespace imgfilt;

TEST_SUITE("noise-metrics") {

TEST_CASE("salt-pepper density extremes") {
    SplitMix64 rng(31);
    const GrayImage img = test::random_image(rng, 20, 20);

    SUBCASE("density 0 changes nothing") {
        const SaltPepperResult res = add_salt_pepper(img, 0.0, 5);
        CHECK(res.image == img);
        CHECK(res.mask.set_count() == 0);
    }
    SUBCASE("density 1 corrupts everything") {
        const SaltPepperResult res = add_salt_pepper(img, 1.0, 5);
        CHECK(res.mask.set_count() == img.pixel_count());
        for (const Intensity v : res.image.pixels()) CHECK((v == 0 || v == 255));
    }
    SUBCASE("density outside [0,1] rejected") {
        CHECK_THROWS_AS(add_salt_pepper(img, -0.1, 5), std::invalid_argument);
        CHECK_THROWS_AS(add_salt_pepper(img, 1.1, 5), std::invalid_argument);
    }
}

TEST_CASE("salt-pepper corrupts exactly floor(density N) pixels") {
    const GrayImage img(100, 100, 128);
    const SaltPepperResult res = add_salt_pepper(img, 0.3, 42);
    CHECK(res.mask.set_count() == 3000);

    const SaltPepperResult tiny = add_salt_pepper(GrayImage(10, 10, 0), 0.025, 1);
    CHECK(tiny.mask.set_count() == 2);  // floor(0.025 * 100)
}

TEST_CASE("pixels outside the mask are untouched") {
    SplitMix64 rng(32);
    const GrayImage img = test::random_image(rng, 33, 21);
    const SaltPepperResult res = add_salt_pepper(img, 0.25, 9);
    std::size_t corrupted = 0;
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            if (res.mask.get(r, c)) {
                ++corrupted;
                CHECK((res.image.at(r, c) == 0 || res.image.at(r, c) == 255));
            } else {
                CHECK(res.image.at(r, c) == img.at(r, c));
            }
        }
    }
    CHECK(corrupted == res.mask.set_count());
}

TEST_CASE("noise injection is a pure function of image, spec and seed") {
    SplitMix64 rng(33);
    const GrayImage img = test::random_image(rng, 40, 40);

    const SaltPepperResult a = add_salt_pepper(img, 0.2, 77);
    const SaltPepperResult b = add_salt_pepper(img, 0.2, 77);
    CHECK(a.image == b.image);
    CHECK(a.mask == b.mask);
    const SaltPepperResult c = add_salt_pepper(img, 0.2, 78);
    CHECK(a.image != c.image);

    CHECK(add_gaussian_noise(img, 10.0, 5) == add_gaussian_noise(img, 10.0, 5));
    CHECK(add_gaussian_noise(img, 10.0, 5) != add_gaussian_noise(img, 10.0, 6));
}

TEST_CASE("gaussian noise basics") {
    SUBCASE("vanishing sd is the identity after rounding") {
        SplitMix64 rng(34);
        const GrayImage img = test::random_image(rng, 16, 16);
        CHECK(add_gaussian_noise(img, 1e-6, 3) == img);
    }
    SUBCASE("invalid sd rejected") {
        CHECK_THROWS_AS(add_gaussian_noise(GrayImage(2, 2), 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(add_gaussian_noise(GrayImage(2, 2), -2.0, 1), std::invalid_argument);
    }
    SUBCASE("sample deviation matches the requested sd") {
        const GrayImage img(256, 256, 128);
        const GrayImage noisy = add_gaussian_noise(img, 10.0, 2026);
        double sum = 0.0;
        for (const Intensity v : noisy.pixels()) sum += v - 128.0;
        const double n = static_cast<double>(noisy.pixel_count());
        const double mean = sum / n;
        double var = 0.0;
        for (const Intensity v : noisy.pixels()) {
            var += (v - 128.0 - mean) * (v - 128.0 - mean);
        }
        const double sample_sd = std::sqrt(var / (n - 1));
        CHECK(sample_sd >= 9.0);
        CHECK(sample_sd <= 11.0);
    }
}

TEST_CASE("rgb noise keeps one coherent mask") {
    SplitMix64 rng(35);
    const RgbImage img = test::random_rgb_image(rng, 18, 14);
    const RgbSaltPepperResult res = add_salt_pepper(img, 0.3, 11);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            if (res.mask.get(r, c)) {
                const Intensity v = res.image.red().at(r, c);
                CHECK((v == 0 || v == 255));
                CHECK(res.image.green().at(r, c) == v);
                CHECK(res.image.blue().at(r, c) == v);
            } else {
                CHECK(res.image.red().at(r, c) == img.red().at(r, c));
                CHECK(res.image.green().at(r, c) == img.green().at(r, c));
                CHECK(res.image.blue().at(r, c) == img.blue().at(r, c));
            }
        }
    }
    CHECK(add_gaussian_noise(img, 8.0, 4) == add_gaussian_noise(img, 8.0, 4));
}

TEST_CASE("mse and psnr worked values") {
    SUBCASE("identical images hit the infinity sentinel") {
        const GrayImage img(12, 12, 50);
        const MetricsReport rep = psnr(img, img);
        CHECK(rep.mse == 0.0);
        CHECK(std::isinf(rep.psnr_db));
        CHECK(rep.max_abs_error == 0);
    }
    SUBCASE("uniform off-by-one") {
        const GrayImage a(8, 8, 100);
        const GrayImage b(8, 8, 101);
        CHECK(mse(a, b) == 1.0);
        const MetricsReport rep = psnr(a, b);
        CHECK(rep.psnr_db == doctest::Approx(48.1308036086791).epsilon(1e-12));
        CHECK(rep.max_abs_error == 1);
    }
    SUBCASE("full-scale difference is 0 dB") {
        const GrayImage black(4, 4, 0);
        const GrayImage white(4, 4, 255);
        CHECK(mse(black, white) == 65025.0);
        CHECK(psnr(black, white).psnr_db == 0.0);
        CHECK(psnr(black, white).max_abs_error == 255);
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(mse(GrayImage(2, 2), GrayImage(3, 2)), std::invalid_argument);
    }
}

TEST_CASE("psnr decreases strictly as mse grows") {
    const GrayImage clean(32, 32, 128);
    double prev_mse = -1.0;
    double prev_psnr = std::numeric_limits<double>::infinity();
    for (const double density : {0.05, 0.2, 0.5}) {
        const SaltPepperResult noisy = add_salt_pepper(clean, density, 3);
        const MetricsReport rep = psnr(clean, noisy.image);
        CHECK(rep.mse > prev_mse);
        CHECK(rep.psnr_db < prev_psnr);
        prev_mse = rep.mse;
        prev_psnr = rep.psnr_db;
    }
}

TEST_CASE("detection confusion worked values") {
    FlagImage flags(10, 10);
    NoiseMask truth(10, 10);

    SUBCASE("perfect detection") {
        for (int i = 0; i < 10; ++i) {
            flags.set(i, i, true);
            truth.set(i, i, true);
        }
        const DetectionReport rep = detection_confusion(flags, truth);
        CHECK(rep.precision == 1.0);
        CHECK(rep.recall == 1.0);
        CHECK(rep.true_positives == 10);
    }
    SUBCASE("silent detector: recall 0, precision 1 by convention") {
        truth.set(3, 4, true);
        const DetectionReport rep = detection_confusion(flags, truth);
        CHECK(rep.recall == 0.0);
        CHECK(rep.precision == 1.0);
    }
    SUBCASE("flag everything against 30 percent truth") {
        for (int r = 0; r < 10; ++r) {
            for (int c = 0; c < 10; ++c) flags.set(r, c, true);
        }
        for (int i = 0; i < 30; ++i) truth.set(i / 10, i % 10, true);
        const DetectionReport rep = detection_confusion(flags, truth);
        CHECK(rep.recall == 1.0);
        CHECK(rep.precision == doctest::Approx(0.3));
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(detection_confusion(FlagImage(2, 2), NoiseMask(3, 3)),
                        std::invalid_argument);
    }
}

TEST_CASE("switching median lifts psnr across the density sweep") {
    const GrayImage clean = make_step128();
    for (const double density : {0.05, 0.2, 0.4, 0.6}) {
        const SaltPepperResult noisy = add_salt_pepper(clean, density, 7);
        const SwitchingMedianResult restored = switching_median(noisy.image, {1, 40, 3});
        const double noisy_psnr = psnr(noisy.image, clean).psnr_db;
        const double restored_psnr = psnr(restored.restored, clean).psnr_db;
        CHECK(restored_psnr > noisy_psnr);
    }
}

TEST_CASE("apply_noise dispatches on the spec kind") {
    SplitMix64 rng(36);
    const GrayImage img = test::random_image(rng, 10, 10);

    const NoisyImage sp = apply_noise(img, {SaltPepperNoise{0.5}, 13});
    REQUIRE(sp.mask.has_value());
    CHECK(sp.mask->set_count() == 50);
    CHECK(sp.image == add_salt_pepper(img, 0.5, 13).image);

    const NoisyImage gn = apply_noise(img, {GaussianNoise{5.0}, 13});
    CHECK_FALSE(gn.mask.has_value());
    CHECK(gn.image == add_gaussian_noise(img, 5.0, 13));
}

}  // TEST_SUITE
