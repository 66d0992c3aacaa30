#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aerogen/raster.hpp"

namespace aerogen {

// Surface types of a masked top-down vehicle drawing.
enum class SurfaceClass : uint8_t {
  Background = 0,
  Outline = 1,
  Body = 2,
  Lights = 3,
  Windows = 4,
};

inline constexpr int kSurfaceClassCount = 5;

const char* surface_class_name(SurfaceClass c);
std::optional<SurfaceClass> surface_class_from_name(std::string_view name);

// Key colors identifying each surface class in a mask image, with a
// per-channel matching tolerance.
struct ColorKey {
  std::array<Rgb8, kSurfaceClassCount> colors{};
  int tolerance = 10;
};

// white background, black outline, red body, yellow lights, blue windows
ColorKey default_color_key();

// A validated surface-class raster plus the physical vehicle dimensions.
// physical_length runs along the longer raster axis; pixel_pitch is
// physical_length divided by that axis' pixel count.
struct Blueprint {
  std::string id;
  std::string vehicle_label;
  Raster<SurfaceClass> mask;
  double pixel_pitch = 0.0;      // meters per pixel
  double physical_length = 0.0;  // meters
  double physical_width = 0.0;   // meters
};

// Sidecar record stored next to each mask image.
struct BlueprintMeta {
  std::string id;
  std::string vehicle_label;
  double physical_length_m = 0.0;
  double physical_width_m = 0.0;
  ColorKey color_key = default_color_key();
};

BlueprintMeta read_blueprint_meta(const std::filesystem::path& json_path);

// Builds a Blueprint from an in-memory mask, deriving pixel_pitch and
// enforcing the invariants (>= 1 Body pixel, positive dims, raster dims
// consistent with the physical dims within 1 px).
Blueprint make_blueprint(std::string id, std::string vehicle_label,
                         Raster<SurfaceClass> mask, double physical_length_m,
                         double physical_width_m);

// Classifies each pixel of an RGB mask image to the nearest key color.
// Throws DataError when more than 0.5% of pixels sit outside tolerance of
// every key color (malformed mask) or when no Body pixel remains
// (empty vehicle).
Blueprint load_blueprint(const std::filesystem::path& image_path,
                         const BlueprintMeta& meta);

// Convenience overload reading the sidecar "<stem>.json" next to the image.
Blueprint load_blueprint(const std::filesystem::path& image_path);

// Absorbs every 4-connected non-Background region smaller than min_region_px
// into the majority class of its boundary neighbors, iterated to a fixpoint
// so the result is idempotent.
Blueprint simplify(const Blueprint& b, int min_region_px);

// Categorical resample to the target ground sampling distance. Output pixel
// count per axis is round(axis_px * pixel_pitch / target_gsd); throws
// DataError when the result would be smaller than 2x2.
Blueprint rescale(const Blueprint& b, double target_gsd);

std::array<int64_t, kSurfaceClassCount> class_histogram(const Blueprint& b);

// Loads every *.png with a sidecar in a directory, sorted by blueprint id.
std::vector<Blueprint> load_blueprint_set(const std::filesystem::path& dir);

}  // namespace aerogen
