#include "imgfilt/synthetic.hpp"

#include <array>

namespace imgfilt {

GrayImage make_flat128() { return GrayImage(128, 128, 128); }

GrayImage make_step128() {
    GrayImage img(128, 128, kStep128Low);
    for (int r = 0; r < 128; ++r) {
        for (int c = kStep128EdgeCol; c < 128; ++c) img.set(r, c, kStep128High);
    }
    return img;
}

GrayImage make_paper9() {
    constexpr std::array<Intensity, 81> grid = {
        90, 90, 90, 90, 90, 90, 90, 90, 90,  //
        90, 90, 90, 90, 90, 90, 90, 90, 90,  //
        90, 90, 90, 0,  0,  0,  90, 90, 90,  //
        90, 90, 90, 0,  90, 0,  90, 90, 90,  //
        90, 90, 90, 0,  0,  0,  90, 90, 90,  //
        90, 90, 90, 90, 90, 90, 90, 90, 90,  //
        90, 0,  0,  0,  90, 90, 90, 90, 90,  //
        90, 0,  90, 0,  90, 90, 90, 90, 90,  //
        90, 90, 90, 90, 90, 90, 90, 90, 90,
    };
    return GrayImage::from_pixels(9, 9, {grid.begin(), grid.end()});
}

std::optional<GrayImage> builtin_image(std::string_view name) {
    if (name == "flat128") return make_flat128();
    if (name == "step128") return make_step128();
    if (name == "paper9") return make_paper9();
    return std::nullopt;
}

}  // namespace imgfilt
