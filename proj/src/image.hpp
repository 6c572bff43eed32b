#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace labtile {

/// 8-bit grayscale image, row-major, origin at the top-left corner.
/// (x, y) addresses column x of row y.
class GrayImage {
public:
    GrayImage(std::uint32_t width, std::uint32_t height, std::uint8_t fill = 0);
    GrayImage(std::uint32_t width, std::uint32_t height, std::vector<std::uint8_t> pixels);

    std::uint32_t width() const { return width_; }
    std::uint32_t height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }

    std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(std::uint32_t x, std::uint32_t y, std::uint8_t tone) {
        pixels_[static_cast<std::size_t>(y) * width_ + x] = tone;
    }

    bool in_bounds(std::uint32_t x, std::uint32_t y) const { return x < width_ && y < height_; }

    std::span<const std::uint8_t> pixels() const { return pixels_; }
    std::span<std::uint8_t> pixels() { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    std::uint32_t width_;
    std::uint32_t height_;
    std::vector<std::uint8_t> pixels_;
};

/// BT.601 luma conversion of packed 8-bit RGB triplets.
GrayImage to_grayscale(std::uint32_t width, std::uint32_t height,
                       std::span<const std::uint8_t> rgb);

}  // namespace labtile
