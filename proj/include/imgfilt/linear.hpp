#pragma once

#include <optional>
#include <vector>

#include "imgfilt/image.hpp"
#include "imgfilt/parallel.hpp"

namespace imgfilt {

/// Odd-sided square convolution kernel, row-major real weights.
class Kernel {
public:
    Kernel(int side, std::vector<double> weights);

    /// Uniform averaging kernel of window side 2*radius+1, weights 1/side^2.
    static Kernel uniform(int radius);

    int side() const { return side_; }
    int radius() const { return side_ / 2; }
    double at(int r, int c) const {
        return weights_[static_cast<std::size_t>(r) * side_ + c];
    }
    const std::vector<double>& weights() const { return weights_; }

private:
    int side_;
    std::vector<double> weights_;
};

/// Normalized symmetric 1-D taps applied along rows then columns.
class SeparableKernel {
public:
    explicit SeparableKernel(std::vector<double> taps);

    int radius() const { return static_cast<int>(taps_.size()) / 2; }
    int side() const { return static_cast<int>(taps_.size()); }
    const std::vector<double>& taps() const { return taps_; }

    /// The equivalent 2-D kernel taps[i] * taps[j].
    Kernel outer_product() const;

private:
    std::vector<double> taps_;
};

struct BoxParams {
    int radius = 1;
    BorderPolicy border = BorderPolicy::replicate();
};

struct GaussianParams {
    double sigma = 1.0;
    std::optional<int> radius;  // empty = auto, ceil(3 sigma)
    BorderPolicy border = BorderPolicy::replicate();

    int resolved_radius() const;
};

/// Direct weighted-sum convolution; the reference oracle for every linear
/// fast path. Output keeps the input dimensions under Replicate/Mirror/
/// Constant and shrinks by side-1 per axis under Crop. Each pixel is the
/// weighted sum over the extended neighborhood, rounded half away from zero
/// and clamped to [0, 255].
GrayImage convolve_naive(const GrayImage& img, const Kernel& k, const BorderPolicy& border,
                         Threads threads = {});

/// Uniform-window mean via exact integer sliding row/column sums. Bit-exact
/// equal to convolve_naive with Kernel::uniform(radius).
GrayImage box_blur(const GrayImage& img, const BoxParams& p, Threads threads = {});

/// taps[i] proportional to exp(-(i-r)^2 / (2 sigma^2)), normalized to sum 1
/// after discretization.
SeparableKernel gaussian_kernel_1d(const GaussianParams& p);

/// Separable Gaussian smoothing: rows pass then columns pass in real
/// arithmetic with a single final rounding per pixel. Within +/-1 intensity
/// of convolve_naive with the outer-product kernel.
GrayImage gaussian_blur(const GrayImage& img, const GaussianParams& p, Threads threads = {});

}  // namespace imgfilt
