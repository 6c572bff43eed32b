#include "png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <string>

#include "errors.hpp"

namespace labtile {

namespace {

struct MemoryReader {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;
};

void read_callback(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
    if (reader->pos + count > reader->bytes.size()) {
        png_error(png, "read past end of PNG stream");
    }
    std::memcpy(out, reader->bytes.data() + reader->pos, count);
    reader->pos += count;
}

void write_callback(png_structp png, png_bytep data, png_size_t count) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + count);
}

void flush_callback(png_structp) {}

void error_callback(png_structp png, png_const_charp message) {
    auto* error_text = static_cast<std::string*>(png_get_error_ptr(png));
    *error_text = message != nullptr ? message : "unknown libpng error";
    png_longjmp(png, 1);
}

void warning_callback(png_structp, png_const_charp) {}

}  // namespace

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
        throw FormatError("not a PNG: signature mismatch", 0);
    }

    std::string error_text;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_text, error_callback,
                                             warning_callback);
    if (png == nullptr) throw IoError("failed to initialize libpng reader");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("failed to initialize libpng info");
    }

    MemoryReader reader{bytes};
    std::vector<std::uint8_t> data;
    std::uint32_t width = 0, height = 0;
    int color_type = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("invalid PNG: " + error_text, reader.pos);
    }

    png_set_read_fn(png, &reader, read_callback);
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    int bit_depth = png_get_bit_depth(png, info);
    color_type = png_get_color_type(png, info);

    if (bit_depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnsupportedError("16-bit PNG not supported, only 8-bit imagery is handled");
    }
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if ((color_type & PNG_COLOR_MASK_ALPHA) != 0 || png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_strip_alpha(png);
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    color_type = png_get_color_type(png, info);
    std::size_t row_bytes = png_get_rowbytes(png, info);
    data.resize(row_bytes * height);
    std::vector<png_bytep> rows(height);
    for (std::uint32_t y = 0; y < height; ++y) rows[y] = data.data() + row_bytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    if (color_type == PNG_COLOR_TYPE_GRAY) {
        return GrayImage(width, height, std::move(data));
    }
    if (color_type == PNG_COLOR_TYPE_RGB) {
        return to_grayscale(width, height, data);
    }
    throw UnsupportedError("unsupported PNG color layout after decoding");
}

std::vector<std::uint8_t> encode_png(const GrayImage& image) {
    std::string error_text;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_text, error_callback,
                                              warning_callback);
    if (png == nullptr) throw IoError("failed to initialize libpng writer");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("failed to initialize libpng info");
    }

    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encoding failed: " + error_text);
    }

    png_set_write_fn(png, &out, write_callback, flush_callback);
    png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_const_bytep> rows(image.height());
    for (std::uint32_t y = 0; y < image.height(); ++y) {
        rows[y] = image.pixels().data() + static_cast<std::size_t>(y) * image.width();
    }
    png_write_image(png, const_cast<png_bytepp>(const_cast<png_bytep*>(rows.data())));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

}  // namespace labtile
