#include "image.hpp"

#include <cmath>

#include "errors.hpp"

namespace labtile {

namespace {

std::size_t checked_size(std::uint32_t width, std::uint32_t height) {
    if (width == 0 || height == 0) {
        throw UsageError("image dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
    }
    return static_cast<std::size_t>(width) * height;
}

}  // namespace

GrayImage::GrayImage(std::uint32_t width, std::uint32_t height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(checked_size(width, height), fill) {}

GrayImage::GrayImage(std::uint32_t width, std::uint32_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != checked_size(width, height)) {
        throw UsageError("pixel buffer size " + std::to_string(pixels_.size()) +
                         " does not match " + std::to_string(width) + "x" + std::to_string(height));
    }
}

GrayImage to_grayscale(std::uint32_t width, std::uint32_t height,
                       std::span<const std::uint8_t> rgb) {
    std::size_t count = checked_size(width, height);
    if (rgb.size() != count * 3) {
        throw UsageError("RGB buffer size " + std::to_string(rgb.size()) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
    }
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        double luma = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
        long tone = std::lround(luma);
        out[i] = static_cast<std::uint8_t>(tone < 0 ? 0 : tone > 255 ? 255 : tone);
    }
    return GrayImage(width, height, std::move(out));
}

}  // namespace labtile
