#include "imgfilt/bilateral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace imgfilt {

namespace {

void validate(const BilateralParams& p) {
    if (!std::isfinite(p.sigma_s) || p.sigma_s <= 0.0) {
        throw std::invalid_argument("sigma_s must be positive");
    }
    if (!std::isfinite(p.sigma_r) || p.sigma_r <= 0.0) {
        throw std::invalid_argument("sigma_r must be positive");
    }
    if (p.resolved_radius() < 1) throw std::invalid_argument("radius must be >= 1");
    if (p.border.kind == BorderPolicy::Kind::Crop) {
        throw std::invalid_argument("bilateral filtering requires an extending border policy");
    }
}

// The two weight shapes, written once; the reference path evaluates them
// per neighbor and the fast path fills tables with the same expressions, so
// the arithmetic is identical bit for bit.
inline double spatial_weight(const BilateralParams& p, int dr, int dc) {
    if (p.spatial == SpatialKind::Box) return 1.0;
    const double d2 = static_cast<double>(dr * dr + dc * dc);
    return std::exp(-d2 / (2.0 * p.sigma_s * p.sigma_s));
}

inline double range_weight(const BilateralParams& p, int delta) {
    const double d = static_cast<double>(delta);
    if (p.range == RangeKind::Tent) return std::max(0.0, 1.0 - d / p.sigma_r);
    return std::exp(-(d * d) / (2.0 * p.sigma_r * p.sigma_r));
}

inline Intensity round_clamp(double v) {
    const long long r = std::llround(v);
    return static_cast<Intensity>(std::clamp(r, 0LL, 255LL));
}

}  // namespace

int BilateralParams::resolved_radius() const {
    if (radius) return *radius;
    return static_cast<int>(std::ceil(3.0 * sigma_s));
}

BilateralParams BilateralParams::surface_blur(double sigma_s, double sigma_r) {
    BilateralParams p;
    p.sigma_s = sigma_s;
    p.sigma_r = sigma_r;
    p.spatial = SpatialKind::Box;
    p.range = RangeKind::Tent;
    return p;
}

GrayImage bilateral_filter(const GrayImage& img, const BilateralParams& p, Threads threads) {
    validate(p);
    const int radius = p.resolved_radius();
    const int side = 2 * radius + 1;

    std::vector<double> spatial(static_cast<std::size_t>(side) * side);
    for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
            spatial[static_cast<std::size_t>(dr + radius) * side + (dc + radius)] =
                spatial_weight(p, dr, dc);
        }
    }
    double range_table[256];
    for (int delta = 0; delta < 256; ++delta) range_table[delta] = range_weight(p, delta);

    GrayImage out(img.width(), img.height());
    parallel_for_rows(img.height(), threads, [&](int row_begin, int row_end) {
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < img.width(); ++c) {
                const int center = img.at(r, c);
                double weight_sum = 0.0;
                double value_sum = 0.0;
                for (int dr = -radius; dr <= radius; ++dr) {
                    for (int dc = -radius; dc <= radius; ++dc) {
                        const int q = pixel_extended(img, {r + dr, c + dc}, p.border);
                        const double w =
                            spatial[static_cast<std::size_t>(dr + radius) * side +
                                    (dc + radius)] *
                            range_table[q > center ? q - center : center - q];
                        weight_sum += w;
                        value_sum += w * q;
                    }
                }
                out.set(r, c, round_clamp(value_sum / weight_sum));
            }
        }
    });
    return out;
}

GrayImage bilateral_reference(const GrayImage& img, const BilateralParams& p) {
    validate(p);
    const int radius = p.resolved_radius();

    GrayImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const int center = img.at(r, c);
            double weight_sum = 0.0;
            double value_sum = 0.0;
            for (int dr = -radius; dr <= radius; ++dr) {
                for (int dc = -radius; dc <= radius; ++dc) {
                    const int q = pixel_extended(img, {r + dr, c + dc}, p.border);
                    const double w = spatial_weight(p, dr, dc) *
                                     range_weight(p, q > center ? q - center : center - q);
                    weight_sum += w;
                    value_sum += w * q;
                }
            }
            out.set(r, c, round_clamp(value_sum / weight_sum));
        }
    }
    return out;
}

double edge_contrast(const GrayImage& img, int edge_col, int strip_width) {
    if (strip_width < 1) throw std::invalid_argument("strip_width must be >= 1");
    if (edge_col - strip_width < 0 || edge_col + strip_width > img.width()) {
        throw std::invalid_argument("strips extend outside the image");
    }
    double left = 0.0;
    double right = 0.0;
    for (int r = 0; r < img.height(); ++r) {
        for (int s = 0; s < strip_width; ++s) {
            left += img.at(r, edge_col - 1 - s);
            right += img.at(r, edge_col + s);
        }
    }
    const double n = static_cast<double>(img.height()) * strip_width;
    return std::abs(right / n - left / n);
}

}  // namespace imgfilt
