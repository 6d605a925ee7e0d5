#include "imgfilt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "imgfilt/rng.hpp"

namespace imgfilt {

double SplitMix64::next_normal() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();                                          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

NoiseMask::NoiseMask(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("noise mask dimensions must be positive");
    }
    marks_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t NoiseMask::set_count() const {
    return static_cast<std::size_t>(std::count(marks_.begin(), marks_.end(), 1));
}

namespace {

// Raster-ordered corrupted positions plus one salt/pepper value each.
struct ImpulsePlan {
    std::vector<std::uint32_t> positions;
    std::vector<Intensity> values;
};

ImpulsePlan plan_impulses(std::size_t pixel_count, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) {
        throw std::invalid_argument("density must be in [0, 1]");
    }
    // The 1e-6 nudge keeps floor() faithful to the decimal the caller wrote
    // (0.3 * 10000 computes fractionally below 3000 in binary floating point).
    const auto corrupt_count = static_cast<std::size_t>(
        std::floor(density * static_cast<double>(pixel_count) + 1e-6));

    std::vector<std::uint32_t> order(pixel_count);
    std::iota(order.begin(), order.end(), 0u);
    SplitMix64 rng(seed);
    for (std::size_t i = pixel_count - 1; i > 0; --i) {
        const std::uint64_t j = rng.next_below(i + 1);
        std::swap(order[i], order[j]);
    }

    ImpulsePlan plan;
    plan.positions.assign(order.begin(),
                          order.begin() + static_cast<std::ptrdiff_t>(corrupt_count));
    std::sort(plan.positions.begin(), plan.positions.end());
    plan.values.reserve(corrupt_count);
    for (std::size_t i = 0; i < corrupt_count; ++i) {
        plan.values.push_back(rng.next_bit() ? 255 : 0);
    }
    return plan;
}

GrayImage perturb_plane(const GrayImage& img, double sd, std::uint64_t seed) {
    SplitMix64 rng(seed);
    GrayImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const double v = img.at(r, c) + rng.next_normal() * sd;
            out.set(r, c, static_cast<Intensity>(std::clamp(std::llround(v), 0LL, 255LL)));
        }
    }
    return out;
}

}  // namespace

SaltPepperResult add_salt_pepper(const GrayImage& img, double density, std::uint64_t seed) {
    const ImpulsePlan plan = plan_impulses(img.pixel_count(), density, seed);
    GrayImage out = img;
    NoiseMask mask(img.width(), img.height());
    for (std::size_t i = 0; i < plan.positions.size(); ++i) {
        const int row = static_cast<int>(plan.positions[i] / img.width());
        const int col = static_cast<int>(plan.positions[i] % img.width());
        out.set(row, col, plan.values[i]);
        mask.set(row, col, true);
    }
    return {std::move(out), std::move(mask)};
}

RgbSaltPepperResult add_salt_pepper(const RgbImage& img, double density, std::uint64_t seed) {
    const std::size_t n =
        static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height());
    const ImpulsePlan plan = plan_impulses(n, density, seed);
    GrayImage r = img.red();
    GrayImage g = img.green();
    GrayImage b = img.blue();
    NoiseMask mask(img.width(), img.height());
    for (std::size_t i = 0; i < plan.positions.size(); ++i) {
        const int row = static_cast<int>(plan.positions[i] / img.width());
        const int col = static_cast<int>(plan.positions[i] % img.width());
        r.set(row, col, plan.values[i]);
        g.set(row, col, plan.values[i]);
        b.set(row, col, plan.values[i]);
        mask.set(row, col, true);
    }
    return {RgbImage(std::move(r), std::move(g), std::move(b)), std::move(mask)};
}

GrayImage add_gaussian_noise(const GrayImage& img, double sd, std::uint64_t seed) {
    if (!std::isfinite(sd) || sd <= 0.0) throw std::invalid_argument("sd must be positive");
    return perturb_plane(img, sd, seed);
}

RgbImage add_gaussian_noise(const RgbImage& img, double sd, std::uint64_t seed) {
    if (!std::isfinite(sd) || sd <= 0.0) throw std::invalid_argument("sd must be positive");
    return RgbImage(perturb_plane(img.red(), sd, seed), perturb_plane(img.green(), sd, seed + 1),
                    perturb_plane(img.blue(), sd, seed + 2));
}

NoisyImage apply_noise(const GrayImage& img, const NoiseSpec& spec) {
    if (const auto* sp = std::get_if<SaltPepperNoise>(&spec.kind)) {
        SaltPepperResult r = add_salt_pepper(img, sp->density, spec.seed);
        return {std::move(r.image), std::move(r.mask)};
    }
    const auto& gn = std::get<GaussianNoise>(spec.kind);
    return {add_gaussian_noise(img, gn.sd, spec.seed), std::nullopt};
}

}  // namespace imgfilt
