#include "image_file.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "errors.hpp"
#include "pgm.hpp"
#include "png_io.hpp"

namespace labtile {

namespace {

enum class Codec { pgm, png };

Codec codec_for(const std::string& path) {
    std::size_t dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "pgm") return Codec::pgm;
    if (ext == "png") return Codec::png;
    throw UsageError("cannot pick a codec for '" + path + "': use a .pgm or .png extension");
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open file for writing: " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("failed writing file: " + path);
    }
}

}  // namespace

GrayImage read_image_file(const std::string& path) {
    Codec codec = codec_for(path);
    std::vector<std::uint8_t> bytes = read_bytes(path);
    return codec == Codec::pgm ? decode_pgm(bytes) : decode_png(bytes);
}

void write_image_file(const GrayImage& image, const std::string& path) {
    Codec codec = codec_for(path);
    write_bytes(path, codec == Codec::pgm ? encode_pgm(image) : encode_png(image));
}

}  // namespace labtile
