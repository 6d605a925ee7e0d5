#pragma once

#include <cstdint>
#include <vector>

#include "imgfilt/image.hpp"
#include "imgfilt/parallel.hpp"

namespace imgfilt {

/// Binary per-pixel impulse marks. Flags only ever go 0 -> 1 across
/// detection iterations.
class FlagImage {
public:
    FlagImage(int width, int height, std::uint8_t value = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    bool get(int row, int col) const { return flags_[index(row, col)] != 0; }
    void set(int row, int col, bool v) { flags_[index(row, col)] = v ? 1 : 0; }
    std::span<const std::uint8_t> flags() const { return flags_; }
    std::size_t set_count() const;

    bool operator==(const FlagImage&) const = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> flags_;
};

struct MedianParams {
    int w = 1;  // half-window; window side 2w+1
    BorderPolicy border = BorderPolicy::replicate();
};

struct SwitchingMedianParams {
    int w = 1;
    int t = 40;  // flag threshold on |pixel - window median|, in (0, 255]
    int p = 3;   // detection/correction iterations
};

struct SwitchingMedianResult {
    GrayImage restored;
    FlagImage flags;
    std::vector<int> change_counts;  // flag transitions per iteration run
};

struct DetectCorrectResult {
    GrayImage image;
    FlagImage flags;
    int changed = 0;
};

/// Median of the (2W+1)^2 extended neighborhood, center included. The window
/// has odd cardinality, so the median is an element of the sorted multiset.
Intensity window_median(const GrayImage& img, PixelCoord center, int w,
                        const BorderPolicy& border);

/// Every output pixel is the window median over the original input; no
/// in-place propagation.
GrayImage median_filter(const GrayImage& img, const MedianParams& p, Threads threads = {});

/// One detection/correction pass. Per pixel, with m the window median of the
/// previous iterate (Replicate border): the flag stays unless |x - m| >= t,
/// in which case it becomes 1; the value is replaced by m exactly when the
/// flag transitioned 0 -> 1 this pass. Jacobi semantics: reads only x_prev
/// and f_prev.
DetectCorrectResult detect_and_correct_once(const GrayImage& x_prev, const FlagImage& f_prev,
                                            int w, int t, Threads threads = {});

/// Iterates detect_and_correct_once from f = all-zero for up to p passes,
/// stopping early once a pass changes nothing. change_counts records every
/// pass actually run.
SwitchingMedianResult switching_median(const GrayImage& img, const SwitchingMedianParams& p,
                                       Threads threads = {});

}  // namespace imgfilt
