#include "imgfilt/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace imgfilt {

namespace {

struct ErrorSums {
    std::int64_t squared = 0;
    int max_abs = 0;
    std::int64_t count = 0;
};

void accumulate(ErrorSums& sums, const GrayImage& a, const GrayImage& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("metric inputs must share dimensions");
    }
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const int d = static_cast<int>(pa[i]) - static_cast<int>(pb[i]);
        sums.squared += static_cast<std::int64_t>(d) * d;
        sums.max_abs = std::max(sums.max_abs, d < 0 ? -d : d);
    }
    sums.count += static_cast<std::int64_t>(pa.size());
}

MetricsReport report_from(const ErrorSums& sums) {
    MetricsReport rep;
    rep.mse = static_cast<double>(sums.squared) / static_cast<double>(sums.count);
    rep.max_abs_error = sums.max_abs;
    rep.psnr_db = sums.squared == 0 ? std::numeric_limits<double>::infinity()
                                    : 10.0 * std::log10(255.0 * 255.0 / rep.mse);
    return rep;
}

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
    ErrorSums sums;
    accumulate(sums, a, b);
    return static_cast<double>(sums.squared) / static_cast<double>(sums.count);
}

double mse(const RgbImage& a, const RgbImage& b) {
    ErrorSums sums;
    accumulate(sums, a.red(), b.red());
    accumulate(sums, a.green(), b.green());
    accumulate(sums, a.blue(), b.blue());
    return static_cast<double>(sums.squared) / static_cast<double>(sums.count);
}

MetricsReport psnr(const GrayImage& a, const GrayImage& b) {
    ErrorSums sums;
    accumulate(sums, a, b);
    return report_from(sums);
}

MetricsReport psnr(const RgbImage& a, const RgbImage& b) {
    ErrorSums sums;
    accumulate(sums, a.red(), b.red());
    accumulate(sums, a.green(), b.green());
    accumulate(sums, a.blue(), b.blue());
    return report_from(sums);
}

DetectionReport detection_confusion(const FlagImage& flags, const NoiseMask& truth) {
    if (flags.width() != truth.width() || flags.height() != truth.height()) {
        throw std::invalid_argument("flag and mask dimensions must match");
    }
    DetectionReport rep;
    const auto f = flags.flags();
    const auto t = truth.marks();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const bool flagged = f[i] != 0;
        const bool corrupted = t[i] != 0;
        if (flagged && corrupted) ++rep.true_positives;
        else if (flagged) ++rep.false_positives;
        else if (corrupted) ++rep.false_negatives;
    }
    const std::int64_t detected = rep.true_positives + rep.false_positives;
    const std::int64_t actual = rep.true_positives + rep.false_negatives;
    rep.precision = detected == 0
                        ? 1.0
                        : static_cast<double>(rep.true_positives) / static_cast<double>(detected);
    rep.recall = actual == 0
                     ? 1.0
                     : static_cast<double>(rep.true_positives) / static_cast<double>(actual);
    return rep;
}

}  // namespace imgfilt
