#pragma once

#include "aerogen/raster.hpp"

namespace aerogen {

// Catmull-Rom bicubic with edge-clamped boundary handling; grid samples sit
// at the centers of equal output subdivisions.
RasterF32 bicubic_upsample(const RasterF32& grid, int out_w, int out_h);

// Bilinear resize with premultiplied-alpha sampling and edge-clamped taps.
RasterRgba8 resize_bilinear(const RasterRgba8& src, int out_w, int out_h);

// Box (area-average) downsample; handles non-integer ratios.
RasterRgb8 downsample_area(const RasterRgb8& src, int out_w, int out_h);

// Categorical resample: each output pixel takes the majority value over its
// source footprint, weighted by overlap area. Ties go to the smaller value.
RasterU8 resample_mode(const RasterU8& src, int out_w, int out_h);

struct RasterDims {
  int w = 0;
  int h = 0;
};

// Output size used by rotate_bilinear: the rotated footprint extent plus one
// pixel of margin per side for interpolation reach.
RasterDims rotated_raster_dims(int w, int h, double angle_deg);

// Rotates counter-clockwise about the raster center into a raster of
// rotated_raster_dims size. Samples premultiplied with transparent
// out-of-bounds taps, so the result carries exact alpha support.
RasterRgba8 rotate_bilinear(const RasterRgba8& src, double angle_deg);

}  // namespace aerogen
