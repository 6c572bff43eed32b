#pragma once

#include <string>

#include "image.hpp"

namespace labtile {

/// Reads a grayscale image from disk; the file extension (.pgm or .png,
/// case-insensitive) selects the codec. Color PNG input is converted to
/// gray. Throws IoError for unreadable files, UsageError for unknown
/// extensions and codec errors otherwise.
GrayImage read_image_file(const std::string& path);

/// Writes the image with the codec selected by the extension: canonical
/// binary PGM for .pgm, 8-bit grayscale PNG for .png.
void write_image_file(const GrayImage& image, const std::string& path);

}  // namespace labtile
