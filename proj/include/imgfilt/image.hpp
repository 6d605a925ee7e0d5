#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace imgfilt {

using Intensity = std::uint8_t;

struct PixelCoord {
    int row = 0;
    int col = 0;
};

/// Rule for pixel values referenced outside the image bounds.
/// Replicate clamps to the nearest edge pixel, Mirror reflects without
/// repeating the edge pixel (reflect-101), Constant returns a fixed value.
/// Crop is only meaningful for operations that define output shrinkage.
struct BorderPolicy {
    enum class Kind { Replicate, Mirror, Constant, Crop };

    Kind kind = Kind::Replicate;
    Intensity value = 0;  // Constant only

    static BorderPolicy replicate() { return {Kind::Replicate, 0}; }
    static BorderPolicy mirror() { return {Kind::Mirror, 0}; }
    static BorderPolicy constant(Intensity v) { return {Kind::Constant, v}; }
    static BorderPolicy crop() { return {Kind::Crop, 0}; }

    bool operator==(const BorderPolicy&) const = default;
};

/// 8-bit grayscale raster, row-major, top-left origin, (row, col) indexing.
class GrayImage {
public:
    /// Builds a width x height image filled with `value`.
    GrayImage(int width, int height, Intensity value = 0);

    /// Adopts an existing row-major pixel buffer; its length must be
    /// width * height.
    static GrayImage from_pixels(int width, int height, std::vector<Intensity> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return pixels_.size(); }

    Intensity at(int row, int col) const { return pixels_[index(row, col)]; }
    void set(int row, int col, Intensity v) { pixels_[index(row, col)] = v; }

    std::span<const Intensity> pixels() const { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    GrayImage(int width, int height, std::vector<Intensity> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {}

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<Intensity> pixels_;
};

/// Three co-dimensioned planes; color images are filtered per plane.
class RgbImage {
public:
    RgbImage(GrayImage red, GrayImage green, GrayImage blue);

    int width() const { return red_.width(); }
    int height() const { return red_.height(); }

    const GrayImage& red() const { return red_; }
    const GrayImage& green() const { return green_; }
    const GrayImage& blue() const { return blue_; }

    bool operator==(const RgbImage&) const = default;

private:
    GrayImage red_;
    GrayImage green_;
    GrayImage blue_;
};

/// Total lookup under Replicate/Mirror/Constant: any integer coordinate maps
/// to an intensity. Crop is not a lookup rule and is rejected.
Intensity pixel_extended(const GrayImage& img, PixelCoord at, const BorderPolicy& policy);

/// Maps an arbitrary 1-D index onto [0, n) per the policy kind.
/// Constant and Crop have no index mapping; callers handle those before.
int extend_index(int i, int n, BorderPolicy::Kind kind);

struct SplitChannels {
    GrayImage red;
    GrayImage green;
    GrayImage blue;
};

SplitChannels split_channels(const RgbImage& img);
RgbImage merge_channels(GrayImage red, GrayImage green, GrayImage blue);

}  // namespace imgfilt
