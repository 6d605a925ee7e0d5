#include "imgfilt/linear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace imgfilt {

namespace {

inline Intensity round_clamp(double v) {
    // llround rounds halfway cases away from zero.
    const long long r = std::llround(v);
    return static_cast<Intensity>(std::clamp(r, 0LL, 255LL));
}

void require_crop_fits(int side, int width, int height) {
    if (side > width || side > height) {
        throw std::invalid_argument("Crop border: kernel side " + std::to_string(side) +
                                    " exceeds image " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

}  // namespace

Kernel::Kernel(int side, std::vector<double> weights)
    : side_(side), weights_(std::move(weights)) {
    if (side < 1 || side % 2 == 0) {
        throw std::invalid_argument("kernel side must be odd and positive, got " +
                                    std::to_string(side));
    }
    if (weights_.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
        throw std::invalid_argument("kernel weight count " + std::to_string(weights_.size()) +
                                    " does not match side " + std::to_string(side));
    }
    for (const double w : weights_) {
        if (!std::isfinite(w)) throw std::invalid_argument("kernel weights must be finite");
    }
}

Kernel Kernel::uniform(int radius) {
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");
    const int side = 2 * radius + 1;
    const double w = 1.0 / (static_cast<double>(side) * static_cast<double>(side));
    return Kernel(side, std::vector<double>(static_cast<std::size_t>(side) * side, w));
}

SeparableKernel::SeparableKernel(std::vector<double> taps) : taps_(std::move(taps)) {
    const std::size_t n = taps_.size();
    if (n == 0 || n % 2 == 0) {
        throw std::invalid_argument("separable kernel needs an odd tap count");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(taps_[i])) throw std::invalid_argument("taps must be finite");
        if (taps_[i] != taps_[n - 1 - i]) {
            throw std::invalid_argument("taps must be symmetric about the center");
        }
        sum += taps_[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("taps must sum to 1, got " + std::to_string(sum));
    }
}

Kernel SeparableKernel::outer_product() const {
    const int n = side();
    std::vector<double> w(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            w[static_cast<std::size_t>(i) * n + j] = taps_[i] * taps_[j];
        }
    }
    return Kernel(n, std::move(w));
}

int GaussianParams::resolved_radius() const {
    if (radius) return *radius;
    return static_cast<int>(std::ceil(3.0 * sigma));
}

GrayImage convolve_naive(const GrayImage& img, const Kernel& k, const BorderPolicy& border,
                         Threads threads) {
    const int radius = k.radius();
    const bool crop = border.kind == BorderPolicy::Kind::Crop;
    if (crop) require_crop_fits(k.side(), img.width(), img.height());

    const int out_w = crop ? img.width() - 2 * radius : img.width();
    const int out_h = crop ? img.height() - 2 * radius : img.height();
    GrayImage out(out_w, out_h);

    parallel_for_rows(out_h, threads, [&](int row_begin, int row_end) {
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < out_w; ++c) {
                // Crop output coordinates index the fully-valid window at
                // input center (r+radius, c+radius).
                const int cr = crop ? r + radius : r;
                const int cc = crop ? c + radius : c;
                double acc = 0.0;
                for (int k_r = -radius; k_r <= radius; ++k_r) {
                    for (int k_c = -radius; k_c <= radius; ++k_c) {
                        const Intensity v =
                            crop ? img.at(cr + k_r, cc + k_c)
                                 : pixel_extended(img, {cr + k_r, cc + k_c}, border);
                        acc += k.at(k_r + radius, k_c + radius) * v;
                    }
                }
                out.set(r, c, round_clamp(acc));
            }
        }
    });
    return out;
}

GrayImage box_blur(const GrayImage& img, const BoxParams& p, Threads threads) {
    if (p.radius < 1) throw std::invalid_argument("box radius must be >= 1");
    const int radius = p.radius;
    const int side = 2 * radius + 1;
    const bool crop = p.border.kind == BorderPolicy::Kind::Crop;
    if (crop) require_crop_fits(side, img.width(), img.height());

    const int out_w = crop ? img.width() - 2 * radius : img.width();
    const int out_h = crop ? img.height() - 2 * radius : img.height();
    const std::int64_t area = static_cast<std::int64_t>(side) * side;

    // Horizontal window sums for every source row that any band may read.
    // Row y of hsum holds sums over columns [c-radius, c+radius] for the
    // output column range; vertical extension is resolved at lookup time.
    auto extended = [&](int row, int col) -> std::int64_t {
        return pixel_extended(img, {row, col}, p.border);
    };

    std::vector<std::int64_t> hsum(static_cast<std::size_t>(img.height()) * out_w);
    parallel_for_rows(img.height(), threads, [&](int row_begin, int row_end) {
        for (int y = row_begin; y < row_end; ++y) {
            std::int64_t* dst = hsum.data() + static_cast<std::size_t>(y) * out_w;
            std::int64_t sum = 0;
            if (crop) {
                for (int l = 0; l < side; ++l) sum += img.at(y, l);
                dst[0] = sum;
                for (int c = 1; c < out_w; ++c) {
                    sum += img.at(y, c + 2 * radius) - img.at(y, c - 1);
                    dst[c] = sum;
                }
            } else {
                for (int l = -radius; l <= radius; ++l) sum += extended(y, l);
                dst[0] = sum;
                for (int c = 1; c < out_w; ++c) {
                    sum += extended(y, c + radius) - extended(y, c - radius - 1);
                    dst[c] = sum;
                }
            }
        }
    });

    // Out-of-bounds rows under Constant contribute a flat row sum.
    const std::int64_t const_row_sum = static_cast<std::int64_t>(side) * p.border.value;
    auto row_sums = [&](int y) -> const std::int64_t* {
        if (y >= 0 && y < img.height()) {
            return hsum.data() + static_cast<std::size_t>(y) * out_w;
        }
        if (p.border.kind == BorderPolicy::Kind::Constant) return nullptr;
        return hsum.data() +
               static_cast<std::size_t>(extend_index(y, img.height(), p.border.kind)) * out_w;
    };

    GrayImage out(out_w, out_h);
    parallel_for_rows(out_h, threads, [&](int row_begin, int row_end) {
        std::vector<std::int64_t> vsum(static_cast<std::size_t>(out_w), 0);
        auto add_row = [&](int y, std::int64_t sign) {
            const std::int64_t* rs = row_sums(y);
            if (rs == nullptr) {
                for (int c = 0; c < out_w; ++c) vsum[c] += sign * const_row_sum;
            } else {
                for (int c = 0; c < out_w; ++c) vsum[c] += sign * rs[c];
            }
        };
        // Window rows for output row r: crop -> [r, r+2radius], else
        // [r-radius, r+radius].
        const int first = crop ? row_begin : row_begin - radius;
        const int last = crop ? row_begin + 2 * radius : row_begin + radius;
        for (int y = first; y <= last; ++y) add_row(y, +1);
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < out_w; ++c) {
                out.set(r, c, static_cast<Intensity>((vsum[c] + area / 2) / area));
            }
            if (r + 1 < row_end) {
                add_row(crop ? r + 1 + 2 * radius : r + 1 + radius, +1);
                add_row(crop ? r : r - radius, -1);
            }
        }
    });
    return out;
}

SeparableKernel gaussian_kernel_1d(const GaussianParams& p) {
    if (!std::isfinite(p.sigma) || p.sigma <= 0.0) {
        throw std::invalid_argument("sigma must be positive");
    }
    const int radius = p.resolved_radius();
    if (radius < 1) throw std::invalid_argument("radius must be >= 1");

    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    const double denom = 2.0 * p.sigma * p.sigma;
    double sum = 0.0;
    for (int i = 0; i <= radius; ++i) {
        const double v = std::exp(-static_cast<double>(i) * i / denom);
        taps[static_cast<std::size_t>(radius + i)] = v;
        taps[static_cast<std::size_t>(radius - i)] = v;
        sum += (i == 0) ? v : 2.0 * v;
    }
    // Normalize by the discrete tap sum so truncation never biases brightness.
    for (double& t : taps) t /= sum;
    return SeparableKernel(std::move(taps));
}

GrayImage gaussian_blur(const GrayImage& img, const GaussianParams& p, Threads threads) {
    const SeparableKernel kernel = gaussian_kernel_1d(p);
    const int radius = kernel.radius();
    const bool crop = p.border.kind == BorderPolicy::Kind::Crop;
    if (crop) require_crop_fits(kernel.side(), img.width(), img.height());

    const int out_w = crop ? img.width() - 2 * radius : img.width();
    const int out_h = crop ? img.height() - 2 * radius : img.height();
    const std::vector<double>& taps = kernel.taps();

    // Rows pass in real arithmetic. For symmetric (non-Constant,
    // non-Crop) borders the vertically-extended source row equals an
    // in-bounds row, so extending the intermediate by row index is exact.
    std::vector<double> rows_pass(static_cast<std::size_t>(img.height()) * out_w);
    parallel_for_rows(img.height(), threads, [&](int row_begin, int row_end) {
        for (int y = row_begin; y < row_end; ++y) {
            double* dst = rows_pass.data() + static_cast<std::size_t>(y) * out_w;
            for (int c = 0; c < out_w; ++c) {
                double acc = 0.0;
                for (int l = -radius; l <= radius; ++l) {
                    const Intensity v = crop ? img.at(y, c + radius + l)
                                             : pixel_extended(img, {y, c + l}, p.border);
                    acc += taps[static_cast<std::size_t>(l + radius)] * v;
                }
                dst[c] = acc;
            }
        }
    });

    const double constant_row_value = static_cast<double>(p.border.value);
    auto row_at = [&](int y) -> const double* {
        if (y >= 0 && y < img.height()) {
            return rows_pass.data() + static_cast<std::size_t>(y) * out_w;
        }
        if (p.border.kind == BorderPolicy::Kind::Constant) return nullptr;
        return rows_pass.data() +
               static_cast<std::size_t>(extend_index(y, img.height(), p.border.kind)) * out_w;
    };

    GrayImage out(out_w, out_h);
    parallel_for_rows(out_h, threads, [&](int row_begin, int row_end) {
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < out_w; ++c) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    const int y = crop ? r + radius + k : r + k;
                    const double* row = row_at(y);
                    const double v = row ? row[c] : constant_row_value;
                    acc += taps[static_cast<std::size_t>(k + radius)] * v;
                }
                // Single rounding per pixel, half away from zero.
                out.set(r, c, round_clamp(acc));
            }
        }
    });
    return out;
}

}  // namespace imgfilt
