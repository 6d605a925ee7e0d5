#pragma once

#include <cstdint>

#include "imgfilt/image.hpp"
#include "imgfilt/median.hpp"
#include "imgfilt/noise.hpp"

namespace imgfilt {

struct MetricsReport {
    double mse = 0.0;
    double psnr_db = 0.0;  // +infinity when mse is 0
    int max_abs_error = 0;
};

struct DetectionReport {
    std::int64_t true_positives = 0;
    std::int64_t false_positives = 0;
    std::int64_t false_negatives = 0;
    double precision = 1.0;  // 1 when TP+FP is 0
    double recall = 1.0;     // 1 when TP+FN is 0
};

/// Mean squared intensity difference in real arithmetic.
double mse(const GrayImage& a, const GrayImage& b);
double mse(const RgbImage& a, const RgbImage& b);

/// PSNR with 8-bit peak: 10 * log10(255^2 / mse).
MetricsReport psnr(const GrayImage& a, const GrayImage& b);
MetricsReport psnr(const RgbImage& a, const RgbImage& b);

/// Scores a detector's flag image against the ground-truth corruption mask.
DetectionReport detection_confusion(const FlagImage& flags, const NoiseMask& truth);

}  // namespace imgfilt
