#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "image.hpp"

namespace labtile {

/// Decodes an 8-bit PNG (grayscale, palette or RGB; alpha is dropped) and
/// converts color content to gray via BT.601 luma. 16-bit PNGs are rejected
/// with UnsupportedError. Unlike the PGM path, encoded PNG bytes are not
/// guaranteed bit-exact across library versions.
GrayImage decode_png(std::span<const std::uint8_t> bytes);

/// Encodes as 8-bit grayscale PNG.
std::vector<std::uint8_t> encode_png(const GrayImage& image);

}  // namespace labtile
