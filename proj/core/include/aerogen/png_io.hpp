#pragma once

#include <filesystem>

#include "aerogen/raster.hpp"

namespace aerogen {

// PNG codecs with fixed, reproducible encoder settings (level 3, no filter):
// the same raster always produces the same bytes. Writes go through a
// temporary file and an atomic rename.

RasterRgb8 read_png_rgb8(const std::filesystem::path& path);
RasterRgba8 read_png_rgba8(const std::filesystem::path& path);
RasterU8 read_png_gray8(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const RasterRgb8& image);
void write_png(const std::filesystem::path& path, const RasterRgba8& image);
void write_png(const std::filesystem::path& path, const RasterU8& image);

}  // namespace aerogen
