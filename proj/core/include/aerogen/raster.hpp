#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "aerogen/errors.hpp"

namespace aerogen {

struct Rgb8 {
  uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

struct Rgba8 {
  uint8_t r = 0, g = 0, b = 0, a = 0;
  friend bool operator==(const Rgba8&, const Rgba8&) = default;
};

template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw DataError("raster dimensions must be positive");
    }
    px_.assign(static_cast<size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return px_.empty(); }
  size_t pixel_count() const { return px_.size(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  T& at(int x, int y) {
    assert(in_bounds(x, y));
    return px_[static_cast<size_t>(y) * width_ + x];
  }
  const T& at(int x, int y) const {
    assert(in_bounds(x, y));
    return px_[static_cast<size_t>(y) * width_ + x];
  }

  T* row(int y) { return px_.data() + static_cast<size_t>(y) * width_; }
  const T* row(int y) const {
    return px_.data() + static_cast<size_t>(y) * width_;
  }

  auto begin() { return px_.begin(); }
  auto end() { return px_.end(); }
  auto begin() const { return px_.begin(); }
  auto end() const { return px_.end(); }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> px_;
};

using RasterRgb8 = Raster<Rgb8>;
using RasterRgba8 = Raster<Rgba8>;
using RasterU8 = Raster<uint8_t>;
using RasterF32 = Raster<float>;

// Straight-alpha source-over with deterministic integer rounding; src is
// clipped against dst bounds. (x0, y0) is the destination of src's (0, 0).
void composite_over(RasterRgb8& dst, const RasterRgba8& src, int x0, int y0);

}  // namespace aerogen
