#include "imgfilt/image.hpp"

namespace imgfilt {

GrayImage::GrayImage(int width, int height, Intensity value)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value);
}

GrayImage GrayImage::from_pixels(int width, int height, std::vector<Intensity> pixels) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("pixel buffer length " + std::to_string(pixels.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
    return GrayImage(width, height, std::move(pixels));
}

RgbImage::RgbImage(GrayImage red, GrayImage green, GrayImage blue)
    : red_(std::move(red)), green_(std::move(green)), blue_(std::move(blue)) {
    if (red_.width() != green_.width() || red_.width() != blue_.width() ||
        red_.height() != green_.height() || red_.height() != blue_.height()) {
        throw std::invalid_argument("rgb planes must share dimensions");
    }
}

int extend_index(int i, int n, BorderPolicy::Kind kind) {
    if (i >= 0 && i < n) return i;
    switch (kind) {
        case BorderPolicy::Kind::Replicate:
            return i < 0 ? 0 : n - 1;
        case BorderPolicy::Kind::Mirror: {
            // Reflect about the edge pixels without repeating them;
            // period 2(n-1) covers arbitrarily far coordinates.
            if (n == 1) return 0;
            const int period = 2 * (n - 1);
            int m = i % period;
            if (m < 0) m += period;
            return m < n ? m : period - m;
        }
        case BorderPolicy::Kind::Constant:
        case BorderPolicy::Kind::Crop:
            break;
    }
    throw std::invalid_argument("extend_index: policy has no index mapping");
}

Intensity pixel_extended(const GrayImage& img, PixelCoord at, const BorderPolicy& policy) {
    if (at.row >= 0 && at.row < img.height() && at.col >= 0 && at.col < img.width()) {
        return img.at(at.row, at.col);
    }
    switch (policy.kind) {
        case BorderPolicy::Kind::Constant:
            return policy.value;
        case BorderPolicy::Kind::Replicate:
        case BorderPolicy::Kind::Mirror:
            return img.at(extend_index(at.row, img.height(), policy.kind),
                          extend_index(at.col, img.width(), policy.kind));
        case BorderPolicy::Kind::Crop:
            break;
    }
    throw std::invalid_argument("pixel_extended: Crop does not define out-of-bounds values");
}

SplitChannels split_channels(const RgbImage& img) {
    return {img.red(), img.green(), img.blue()};
}

RgbImage merge_channels(GrayImage red, GrayImage green, GrayImage blue) {
    return RgbImage(std::move(red), std::move(green), std::move(blue));
}

}  // namespace imgfilt
