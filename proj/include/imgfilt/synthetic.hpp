#pragma once

#include <optional>
#include <string_view>

#include "imgfilt/image.hpp"

namespace imgfilt {

/// 128x128 constant mid-gray image.
GrayImage make_flat128();

/// 128x128 vertical two-level step: columns [0, 64) at 64, [64, 128) at 192.
/// Levels sit away from 0/255 so both salt and pepper impulses are visible.
GrayImage make_step128();

inline constexpr int kStep128EdgeCol = 64;
inline constexpr Intensity kStep128Low = 64;
inline constexpr Intensity kStep128High = 192;

/// 9x9 box-blur worked example: peak value 90 with 0 holes. Contains one
/// pixel whose 3x3 neighborhood sums to 360 (blurs to 40) and one 90
/// surrounded by zeros (blurs to 10).
GrayImage make_paper9();

inline constexpr PixelCoord kPaper9Sum360{7, 2};
inline constexpr PixelCoord kPaper9Isolated{3, 4};

/// Looks up a builtin by name: "flat128", "step128", "paper9".
std::optional<GrayImage> builtin_image(std::string_view name);

}  // namespace imgfilt
