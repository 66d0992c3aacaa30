#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aerogen/geometry.hpp"
#include "aerogen/manifest.hpp"
#include "aerogen/raster.hpp"

namespace aerogen {

// Label color of one semantic class.
struct ClassColorEntry {
  std::string name;
  int class_id = 0;
  Rgb8 color;
};

struct ClassColorMap {
  std::vector<ClassColorEntry> entries;
  int tolerance = 0;  // per channel

  // Colors must be pairwise farther apart than 2*tolerance (Chebyshev).
  void validate() const;
};

ClassColorMap load_class_color_map(const std::filesystem::path& json_path);

// 8-connected pixel component of one label color.
struct Region {
  std::vector<std::pair<int, int>> pixels;  // row-major discovery order

  int64_t area() const { return static_cast<int64_t>(pixels.size()); }
  Point2 centroid() const;
};

// Maximal 8-connected components of pixels within tolerance of class_color,
// ordered by first pixel in row-major scan order.
std::vector<Region> extract_class_regions(const RasterRgb8& label_raster,
                                          Rgb8 class_color, int tolerance);

// Manual removals, keyed by region centroid (matched within 0.5 px).
struct RegionExclusion {
  double cx = 0.0;
  double cy = 0.0;
};

std::vector<RegionExclusion> load_exclusions(
    const std::filesystem::path& json_path);

// Maps exclusion centroids onto region indices.
std::vector<size_t> resolve_exclusions(
    const std::vector<Region>& regions,
    const std::vector<RegionExclusion>& exclusions);

// One annotation per surviving region: the obb is the minimum-area rectangle
// over the region's pixel centers grown by half a pixel per side (so a w x h
// block recovers exactly w x h), the aabb its axis-aligned extent. Regions
// below min_area_px or excluded are omitted.
std::vector<Annotation> regions_to_annotations(
    const std::vector<Region>& regions, int class_id, int64_t min_area_px,
    const std::vector<size_t>& excluded_ids);

struct ConvertedTile {
  int width = 0;
  int height = 0;
  std::vector<Annotation> annotations;
};

// Full semantic-to-detection conversion of one rgb/label pair.
ConvertedTile convert_tile(const RasterRgb8& rgb_raster,
                           const RasterRgb8& label_raster,
                           const ClassColorMap& class_map, int64_t min_area_px,
                           const std::vector<RegionExclusion>& exclusions = {});

}  // namespace aerogen
