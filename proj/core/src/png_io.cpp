#include "aerogen/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "aerogen/errors.hpp"

namespace aerogen {

static_assert(sizeof(Rgb8) == 3 && sizeof(Rgba8) == 4,
              "packed pixel layout required for codec casts");

namespace {

struct FileCloser {
  FILE* fp = nullptr;
  ~FileCloser() {
    if (fp) std::fclose(fp);
  }
};

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

// Decodes any PNG to 8-bit channels; channels is 1 (gray), 3 (rgb) or
// 4 (rgba). Palette/gray/16-bit inputs are expanded as needed.
std::vector<uint8_t> decode_png(const std::filesystem::path& path,
                                int channels, int& width, int& height) {
  FileCloser file{std::fopen(path.string().c_str(), "rb")};
  if (!file.fp) throw IoError("cannot open " + path.string());

  PngReader ctx;
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                   nullptr);
  if (!ctx.png) throw IoError("libpng read init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("libpng info init failed");
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw IoError("failed to decode " + path.string());
  }

  png_init_io(ctx.png, file.fp);
  png_read_info(ctx.png, ctx.info);

  const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
  const int color_type = png_get_color_type(ctx.png, ctx.info);
  const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);

  if (bit_depth == 16) png_set_strip_16(ctx.png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(ctx.png);
  }
  if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(ctx.png);
  }
  if (channels >= 3 && (color_type == PNG_COLOR_TYPE_GRAY ||
                        color_type == PNG_COLOR_TYPE_GRAY_ALPHA)) {
    png_set_gray_to_rgb(ctx.png);
  }
  if (channels == 1 && (color_type & PNG_COLOR_MASK_COLOR)) {
    png_set_rgb_to_gray_fixed(ctx.png, 1, -1, -1);
  }
  if (channels == 4) {
    png_set_filler(ctx.png, 0xFF, PNG_FILLER_AFTER);
  } else {
    png_set_strip_alpha(ctx.png);
  }
  png_read_update_info(ctx.png, ctx.info);

  const size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
  if (rowbytes != static_cast<size_t>(w) * channels) {
    throw IoError("unexpected channel layout in " + path.string());
  }

  std::vector<uint8_t> data(static_cast<size_t>(w) * h * channels);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = data.data() + static_cast<size_t>(y) * rowbytes;
  }
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);

  width = static_cast<int>(w);
  height = static_cast<int>(h);
  return data;
}

void encode_png(const std::filesystem::path& path, const uint8_t* data,
                int width, int height, int channels) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    FileCloser file{std::fopen(tmp.string().c_str(), "wb")};
    if (!file.fp) throw IoError("cannot create " + tmp.string());

    PngWriter ctx;
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                      nullptr);
    if (!ctx.png) throw IoError("libpng write init failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.info) throw IoError("libpng info init failed");
    if (setjmp(png_jmpbuf(ctx.png))) {
      throw IoError("failed to encode " + path.string());
    }

    png_init_io(ctx.png, file.fp);
    int color_type = PNG_COLOR_TYPE_RGB;
    if (channels == 1) color_type = PNG_COLOR_TYPE_GRAY;
    if (channels == 4) color_type = PNG_COLOR_TYPE_RGB_ALPHA;
    png_set_IHDR(ctx.png, ctx.info, width, height, 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(ctx.png, 3);
    png_set_filter(ctx.png, 0, PNG_FILTER_NONE);
    png_write_info(ctx.png, ctx.info);

    const size_t rowbytes = static_cast<size_t>(width) * channels;
    for (int y = 0; y < height; ++y) {
      png_write_row(ctx.png,
                    const_cast<png_bytep>(data + static_cast<size_t>(y) *
                                                     rowbytes));
    }
    png_write_end(ctx.png, nullptr);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + ": " + ec.message());
}

}  // namespace

RasterRgb8 read_png_rgb8(const std::filesystem::path& path) {
  int w = 0, h = 0;
  const auto data = decode_png(path, 3, w, h);
  RasterRgb8 out(w, h);
  std::memcpy(out.row(0), data.data(), data.size());
  return out;
}

RasterRgba8 read_png_rgba8(const std::filesystem::path& path) {
  int w = 0, h = 0;
  const auto data = decode_png(path, 4, w, h);
  RasterRgba8 out(w, h);
  std::memcpy(out.row(0), data.data(), data.size());
  return out;
}

RasterU8 read_png_gray8(const std::filesystem::path& path) {
  int w = 0, h = 0;
  const auto data = decode_png(path, 1, w, h);
  RasterU8 out(w, h);
  std::memcpy(out.row(0), data.data(), data.size());
  return out;
}

void write_png(const std::filesystem::path& path, const RasterRgb8& image) {
  encode_png(path, reinterpret_cast<const uint8_t*>(image.row(0)),
             image.width(), image.height(), 3);
}

void write_png(const std::filesystem::path& path, const RasterRgba8& image) {
  encode_png(path, reinterpret_cast<const uint8_t*>(image.row(0)),
             image.width(), image.height(), 4);
}

void write_png(const std::filesystem::path& path, const RasterU8& image) {
  encode_png(path, image.row(0), image.width(), image.height(), 1);
}

}  // namespace aerogen
