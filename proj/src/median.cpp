#include "imgfilt/median.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>

namespace imgfilt {

namespace {

void validate_window(int w) {
    if (w < 1) throw std::invalid_argument("half-window W must be >= 1");
}

void validate_threshold(int t) {
    if (t < 1 || t > 255) {
        throw std::invalid_argument("threshold T must be in [1, 255], got " + std::to_string(t));
    }
}

void require_extending(const BorderPolicy& border, const char* op) {
    if (border.kind == BorderPolicy::Kind::Crop) {
        throw std::invalid_argument(std::string(op) + " requires an extending border policy");
    }
}

// Gathers the extended window into `buf` and selects the middle element.
Intensity median_into(const GrayImage& img, int row, int col, int w, const BorderPolicy& border,
                      std::vector<Intensity>& buf) {
    buf.clear();
    for (int k = -w; k <= w; ++k) {
        for (int l = -w; l <= w; ++l) {
            buf.push_back(pixel_extended(img, {row + k, col + l}, border));
        }
    }
    const auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
    std::nth_element(buf.begin(), mid, buf.end());
    return *mid;
}

}  // namespace

FlagImage::FlagImage(int width, int height, std::uint8_t value)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("flag image dimensions must be positive");
    }
    flags_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                  value ? 1 : 0);
}

std::size_t FlagImage::set_count() const {
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
}

Intensity window_median(const GrayImage& img, PixelCoord center, int w,
                        const BorderPolicy& border) {
    validate_window(w);
    require_extending(border, "window_median");
    std::vector<Intensity> buf;
    buf.reserve(static_cast<std::size_t>(2 * w + 1) * (2 * w + 1));
    return median_into(img, center.row, center.col, w, border, buf);
}

GrayImage median_filter(const GrayImage& img, const MedianParams& p, Threads threads) {
    validate_window(p.w);
    require_extending(p.border, "median_filter");
    GrayImage out(img.width(), img.height());
    parallel_for_rows(img.height(), threads, [&](int row_begin, int row_end) {
        std::vector<Intensity> buf;
        buf.reserve(static_cast<std::size_t>(2 * p.w + 1) * (2 * p.w + 1));
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < img.width(); ++c) {
                out.set(r, c, median_into(img, r, c, p.w, p.border, buf));
            }
        }
    });
    return out;
}

DetectCorrectResult detect_and_correct_once(const GrayImage& x_prev, const FlagImage& f_prev,
                                            int w, int t, Threads threads) {
    validate_window(w);
    validate_threshold(t);
    if (x_prev.width() != f_prev.width() || x_prev.height() != f_prev.height()) {
        throw std::invalid_argument("image and flag dimensions must match");
    }

    const BorderPolicy border = BorderPolicy::replicate();
    GrayImage x_next(x_prev.width(), x_prev.height());
    FlagImage f_next(x_prev.width(), x_prev.height());
    std::atomic<int> changed{0};

    parallel_for_rows(x_prev.height(), threads, [&](int row_begin, int row_end) {
        std::vector<Intensity> buf;
        buf.reserve(static_cast<std::size_t>(2 * w + 1) * (2 * w + 1));
        int local_changed = 0;
        for (int r = row_begin; r < row_end; ++r) {
            for (int c = 0; c < x_prev.width(); ++c) {
                const Intensity x = x_prev.at(r, c);
                const Intensity m = median_into(x_prev, r, c, w, border, buf);
                const int diff = x > m ? x - m : m - x;
                const bool was_flagged = f_prev.get(r, c);
                const bool flagged = diff < t ? was_flagged : true;
                const bool transitioned = flagged && !was_flagged;
                f_next.set(r, c, flagged);
                x_next.set(r, c, transitioned ? m : x);
                if (transitioned) ++local_changed;
            }
        }
        changed += local_changed;
    });
    return {std::move(x_next), std::move(f_next), changed.load()};
}

SwitchingMedianResult switching_median(const GrayImage& img, const SwitchingMedianParams& p,
                                       Threads threads) {
    validate_window(p.w);
    validate_threshold(p.t);
    if (p.p < 1) throw std::invalid_argument("iteration count p must be >= 1");

    GrayImage x = img;
    FlagImage f(img.width(), img.height(), 0);
    std::vector<int> counts;
    counts.reserve(static_cast<std::size_t>(p.p));
    for (int i = 0; i < p.p; ++i) {
        DetectCorrectResult step = detect_and_correct_once(x, f, p.w, p.t, threads);
        x = std::move(step.image);
        f = std::move(step.flags);
        counts.push_back(step.changed);
        if (step.changed == 0) break;  // fixed point reached
    }
    return {std::move(x), std::move(f), std::move(counts)};
}

}  // namespace imgfilt
