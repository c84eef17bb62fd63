#include "core/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace fetal::png {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Gray8 read_gray8(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open PNG: " + path);

    png_structp pngp = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!pngp) throw std::runtime_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(pngp);
    if (!info) {
        png_destroy_read_struct(&pngp, nullptr, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(pngp))) {
        png_destroy_read_struct(&pngp, &info, nullptr);
        throw std::runtime_error("malformed PNG: " + path);
    }
    png_init_io(pngp, fp.get());
    png_read_info(pngp, info);

    // Coerce everything to 8-bit grayscale.
    png_set_strip_16(pngp);
    png_set_strip_alpha(pngp);
    if (png_get_color_type(pngp, info) & PNG_COLOR_MASK_COLOR) {
        png_set_rgb_to_gray_fixed(pngp, 1, -1, -1);
    }
    if (png_get_color_type(pngp, info) == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(pngp);
        png_set_rgb_to_gray_fixed(pngp, 1, -1, -1);
    }
    if (png_get_bit_depth(pngp, info) < 8) {
        png_set_expand_gray_1_2_4_to_8(pngp);
    }
    png_read_update_info(pngp, info);

    Gray8 img;
    img.width = static_cast<int>(png_get_image_width(pngp, info));
    img.height = static_cast<int>(png_get_image_height(pngp, info));
    img.data.resize(static_cast<std::size_t>(img.width) * img.height);
    std::vector<png_bytep> rows(img.height);
    for (int r = 0; r < img.height; ++r) {
        rows[r] = img.data.data() + static_cast<std::size_t>(r) * img.width;
    }
    png_read_image(pngp, rows.data());
    png_read_end(pngp, nullptr);
    png_destroy_read_struct(&pngp, &info, nullptr);
    return img;
}

void write_gray8(const std::string& path, const Gray8& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.data.size() != static_cast<std::size_t>(img.width) * img.height) {
        throw std::runtime_error("write_gray8: inconsistent image buffer");
    }
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot create PNG: " + path);

    png_structp pngp = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!pngp) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(pngp);
    if (!info) {
        png_destroy_write_struct(&pngp, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(pngp))) {
        png_destroy_write_struct(&pngp, &info);
        throw std::runtime_error("PNG write failed: " + path);
    }
    png_init_io(pngp, fp.get());
    // Fixed compression settings and no timestamp keep output byte-stable.
    png_set_compression_level(pngp, 6);
    png_set_IHDR(pngp, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(pngp, info);
    for (int r = 0; r < img.height; ++r) {
        png_write_row(pngp, const_cast<png_bytep>(img.data.data() + static_cast<std::size_t>(r) * img.width));
    }
    png_write_end(pngp, info);
    png_destroy_write_struct(&pngp, &info);
}

}  // namespace fetal::png
