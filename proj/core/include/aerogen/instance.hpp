#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aerogen/blueprint.hpp"
#include "aerogen/raster.hpp"
#include "aerogen/rng.hpp"

namespace aerogen {

struct ColorPalette {
  std::vector<Rgb8> body_colors;
  std::vector<Rgb8> window_colors;
  Rgb8 light_color{235, 225, 180};
  Rgb8 outline_color_black{0, 0, 0};

  void validate() const;  // non-empty lists
};

// 12 common car body colors plus a blue-gray window band.
ColorPalette default_palette();

// Override file: either a bare JSON array of [r,g,b] triples (replaces the
// body colors) or an object with any of body_colors / window_colors /
// light_color / outline_color_black.
ColorPalette load_palette(const std::filesystem::path& json_path);

enum class CutAxis { None, X, Y };
enum class OutlineMode { Black, Body };

// One colored vehicle ready for placement. Alpha is 0 exactly where the
// source mask was Background; the footprint equals the raster extent.
struct VehicleInstance {
  RasterRgba8 pixels;
  int footprint_w = 0;
  int footprint_h = 0;
  bool is_partial = false;
  CutAxis cut_axis = CutAxis::None;
  double cut_fraction = 1.0;
  double deform_sx = 1.0;
  double deform_sy = 1.0;
  std::string source_id;  // provenance carried into annotations
};

// Paints a rescaled blueprint. Per instance: one body color and one window
// color are drawn from the palette (two rng draws, body first); lights take
// the fixed light color; outlines are black or the body color per mode.
VehicleInstance colorize(const Blueprint& b, const ColorPalette& palette,
                         OutlineMode outline_mode, RngStream& rng);

// Crops to a uniform fraction in [0.5, 0.7] of the width or height, keeping a
// uniformly chosen side. Three rng draws: axis, fraction, side.
VehicleInstance cut_partial(VehicleInstance v, RngStream& rng);

// Per-side scale jitter: four draws (left, right, top, bottom), each uniform
// in [-max_frac, +max_frac]; the raster is resampled bilinearly to
// round(dim * (1 + near + far)). Throws DataError if a dimension would drop
// below 2 px.
VehicleInstance deform(VehicleInstance v, double max_frac, RngStream& rng);

}  // namespace aerogen
