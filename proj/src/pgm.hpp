#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "image.hpp"

namespace labtile {

/// Decodes a binary PGM ("P5") stream with maxval 255. Header comments and
/// arbitrary whitespace are tolerated per the format; bytes after the declared
/// payload are ignored. Throws FormatError (with the offending byte offset)
/// for malformed input and UnsupportedError for maxval != 255.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

/// Canonical P5 encoding: "P5\n<width> <height>\n255\n" + raw row-major
/// payload. Byte-exact across platforms.
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);

}  // namespace labtile
