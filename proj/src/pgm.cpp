#include "pgm.hpp"

#include <string>

#include "errors.hpp"

namespace labtile {

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
public:
    HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

    std::size_t pos() const { return pos_; }

    // Whitespace and '#' comments (to end of line) may separate header tokens.
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (is_pgm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                return;
            }
        }
    }

    // Returns the token value and the offset of its first digit.
    std::uint64_t read_uint(const char* what, std::size_t* token_at = nullptr) {
        skip_separators();
        if (pos_ >= bytes_.size()) {
            throw FormatError(std::string("unexpected end of header while reading ") + what, pos_);
        }
        if (bytes_[pos_] < '0' || bytes_[pos_] > '9') {
            throw FormatError(std::string("expected digit for ") + what, pos_);
        }
        std::size_t start = pos_;
        if (token_at) *token_at = start;
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFull) {
                throw FormatError(std::string(what) + " out of range", start);
            }
            ++pos_;
        }
        return value;
    }

    // The raster starts after exactly one whitespace byte following maxval.
    void expect_single_space() {
        if (pos_ >= bytes_.size() || !is_pgm_space(bytes_[pos_])) {
            throw FormatError("expected single whitespace byte before payload", pos_);
        }
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
};

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw FormatError("not a binary PGM: magic 'P5' missing", 0);
    }
    HeaderReader header(bytes, 2);
    std::size_t token_at = 0;
    std::uint64_t width = header.read_uint("width", &token_at);
    if (width == 0) throw FormatError("width must be positive", token_at);
    std::uint64_t height = header.read_uint("height", &token_at);
    if (height == 0) throw FormatError("height must be positive", token_at);
    std::uint64_t maxval = header.read_uint("maxval", &token_at);
    if (maxval != 255) {
        throw UnsupportedError("unsupported maxval " + std::to_string(maxval) +
                               ", only 255 is handled (byte offset " + std::to_string(token_at) +
                               ")");
    }
    header.expect_single_space();

    std::size_t payload_at = header.pos();
    std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::size_t have = bytes.size() - payload_at;
    if (have < need) {
        throw FormatError("truncated payload: " + std::to_string(width) + "x" +
                              std::to_string(height) + " needs " + std::to_string(need) +
                              " bytes, found " + std::to_string(have),
                          bytes.size());
    }
    // Bytes past the declared payload are never read.
    std::vector<std::uint8_t> pixels(bytes.begin() + payload_at,
                                     bytes.begin() + payload_at + need);
    return GrayImage(static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
                     std::move(pixels));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
    std::string header = "P5\n" + std::to_string(image.width()) + " " +
                         std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + image.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

}  // namespace labtile
