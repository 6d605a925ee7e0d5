#pragma once

#include <cstdint>

namespace imgfilt {

/// SplitMix64 generator (Steele/Lea/Vigna reference constants). Fixed here
/// so that every seeded artifact is byte-identical across platforms; the
/// standard library distributions are not portable.
///
/// Derived draws:
///  - next_below(n): Lemire multiply-shift, (u128(next()) * n) >> 64
///  - next_unit():   53 high bits scaled to [0, 1)
///  - next_bit():    top bit of one draw
///  - next_normal(): Box-Muller cosine branch, exactly two draws
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool next_bit() { return (next() >> 63) != 0; }

    /// Standard normal draw. u1 is taken from (0, 1] so the logarithm is
    /// always finite.
    double next_normal();

private:
    std::uint64_t state_;
};

}  // namespace imgfilt
