#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "image.hpp"
#include "renderer.hpp"

namespace labtile {

/// Row-major bit grid marking where two images of equal dimensions differ.
class ChangeMask {
public:
    ChangeMask(std::uint32_t width, std::uint32_t height)
        : width_(width), height_(height),
          bits_(static_cast<std::size_t>(width) * height, 0) {}

    std::uint32_t width() const { return width_; }
    std::uint32_t height() const { return height_; }
    bool test(std::uint32_t x, std::uint32_t y) const {
        return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(std::uint32_t x, std::uint32_t y, bool value) {
        bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
    }

    std::uint64_t popcount() const;

private:
    std::uint32_t width_;
    std::uint32_t height_;
    std::vector<std::uint8_t> bits_;
};

/// Bit set exactly where the two images' tones differ. UsageError on
/// dimension mismatch.
ChangeMask change_mask(const GrayImage& before, const GrayImage& after);

/// Hamming distance between two masks of equal dimensions.
std::uint64_t mask_distance(const ChangeMask& a, const ChangeMask& b);

struct EdgeConcentration {
    double near_fraction = 0.0;  // protected_r2 share within `radius` of the edge set
    double far_fraction = 0.0;   // protected_r2 share over all remaining pixels
};

using PixelCoord = std::pair<std::uint32_t, std::uint32_t>;

/// Splits the pass's pixels into those within Chebyshev distance `radius` of
/// any edge coordinate and the rest, and reports the protected_r2 fraction of
/// each side (0 for an empty side). The edge set must be nonempty and
/// in-bounds.
EdgeConcentration edge_concentration(const PassTrace& trace, std::span<const PixelCoord> edge_set,
                                     std::uint32_t radius);

}  // namespace labtile
