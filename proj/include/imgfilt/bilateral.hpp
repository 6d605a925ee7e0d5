#pragma once

#include <optional>

#include "imgfilt/image.hpp"
#include "imgfilt/parallel.hpp"

namespace imgfilt {

enum class SpatialKind { Gaussian, Box };
enum class RangeKind { Gaussian, Tent };

struct BilateralParams {
    double sigma_s = 2.0;   // spatial scale, pixels
    double sigma_r = 30.0;  // range scale, intensity units
    std::optional<int> radius;  // empty = auto, ceil(3 sigma_s)
    SpatialKind spatial = SpatialKind::Gaussian;
    RangeKind range = RangeKind::Gaussian;
    BorderPolicy border = BorderPolicy::replicate();

    int resolved_radius() const;

    /// The surface-blur variant: flat box spatial weight, tent range weight.
    static BilateralParams surface_blur(double sigma_s, double sigma_r);
};

/// Edge-preserving weighted mean. Each neighbor q of center c weighs in as
/// S(||pos(q)-pos(c)||) * R(|I(q)-I(c)|): S is Gaussian in the Euclidean
/// pixel distance or a flat box, R is Gaussian in the intensity difference
/// or a tent that reaches zero at sigma_r. The center's own weight is 1, so
/// normalization never divides by zero. Uses precomputed spatial and range
/// tables; bit-exact equal to bilateral_reference.
GrayImage bilateral_filter(const GrayImage& img, const BilateralParams& p, Threads threads = {});

/// Direct nested-loop transcription of the weighted-average definition with
/// no precomputation; the oracle the optimized path must match bit-exactly.
GrayImage bilateral_reference(const GrayImage& img, const BilateralParams& p);

/// |mean of the column strip right of `edge_col` - mean of the strip left of
/// it|, strips `strip_width` columns wide. Measures how much step contrast a
/// filter retained.
double edge_contrast(const GrayImage& img, int edge_col, int strip_width);

}  // namespace imgfilt
