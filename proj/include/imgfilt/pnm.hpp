#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "imgfilt/image.hpp"

namespace imgfilt {

/// Malformed or unsupported Netpbm stream. The message names the offending
/// header field (magic, width, height, maxval, payload).
class PnmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure (missing file, unwritable path). Kept distinct from
/// PnmError so callers can map the two to different exit codes.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using PnmImage = std::variant<GrayImage, RgbImage>;

/// Decodes a P2/P5 (PGM) or P3/P6 (PPM) stream with maxval 255.
/// Header comments (#) are skipped; ASCII and binary variants accepted.
PnmImage read_pnm(std::span<const std::byte> bytes);
PnmImage read_pnm(const std::vector<std::byte>& bytes);
PnmImage read_pnm(std::string_view bytes);

/// Canonical encoding: `<magic>\n<width> <height>\n255\n<payload>`.
/// Binary (P5/P6) is the default; ASCII writes one image row per line with
/// single-space separators. read_pnm(write_pnm(img)) reproduces img exactly.
std::vector<std::byte> write_pnm(const GrayImage& img, bool ascii = false);
std::vector<std::byte> write_pnm(const RgbImage& img, bool ascii = false);
std::vector<std::byte> write_pnm(const PnmImage& img, bool ascii = false);

PnmImage load_pnm(const std::string& path);
void save_pnm(const std::string& path, const PnmImage& img, bool ascii = false);

}  // namespace imgfilt
