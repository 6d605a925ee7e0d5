#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "imgfilt/image.hpp"

namespace imgfilt {

/// Ground-truth marks of corrupted positions.
class NoiseMask {
public:
    NoiseMask(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    bool get(int row, int col) const { return marks_[index(row, col)] != 0; }
    void set(int row, int col, bool v) { marks_[index(row, col)] = v ? 1 : 0; }
    std::span<const std::uint8_t> marks() const { return marks_; }
    std::size_t set_count() const;

    bool operator==(const NoiseMask&) const = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> marks_;
};

struct SaltPepperNoise {
    double density = 0.0;  // fraction of pixels corrupted, in [0, 1]
};

struct GaussianNoise {
    double sd = 1.0;  // additive noise standard deviation, > 0
};

struct NoiseSpec {
    std::variant<SaltPepperNoise, GaussianNoise> kind;
    std::uint64_t seed = 0;
};

struct SaltPepperResult {
    GrayImage image;
    NoiseMask mask;
};

struct RgbSaltPepperResult {
    RgbImage image;
    NoiseMask mask;
};

/// Corrupts exactly floor(density * N) distinct pixels: a seeded
/// Fisher-Yates shuffle of all N positions picks them, they are restored to
/// raster order, then each gets one 0/255 draw (top bit: 1 = salt 255).
/// Same seed therefore means identical bytes everywhere.
SaltPepperResult add_salt_pepper(const GrayImage& img, double density, std::uint64_t seed);

/// Color lift: the same positions receive the same 0/255 value in all three
/// channels, so the mask stays a single coherent ground truth.
RgbSaltPepperResult add_salt_pepper(const RgbImage& img, double density, std::uint64_t seed);

/// Adds an independent seeded normal draw (mean 0, given sd) per pixel in
/// raster order (two uniform draws each), rounded and clamped to [0, 255].
GrayImage add_gaussian_noise(const GrayImage& img, double sd, std::uint64_t seed);

/// Color lift: planes are perturbed independently with seeds seed+0/1/2.
RgbImage add_gaussian_noise(const RgbImage& img, double sd, std::uint64_t seed);

struct NoisyImage {
    GrayImage image;
    std::optional<NoiseMask> mask;  // present for salt-pepper
};

NoisyImage apply_noise(const GrayImage& img, const NoiseSpec& spec);

}  // namespace imgfilt
