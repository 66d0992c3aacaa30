#include "aerogen/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "aerogen/errors.hpp"
#include "aerogen/manifest.hpp"

namespace aerogen {

namespace {

using nlohmann::json;

int chebyshev(const Rgb8& a, const Rgb8& b) {
  return std::max({std::abs(a.r - b.r), std::abs(a.g - b.g),
                   std::abs(a.b - b.b)});
}

}  // namespace

void ClassColorMap::validate() const {
  if (entries.empty()) throw ConfigError("class map has no entries");
  if (tolerance < 0) throw ConfigError("class map tolerance must be >= 0");
  for (size_t i = 0; i < entries.size(); ++i) {
    for (size_t j = i + 1; j < entries.size(); ++j) {
      if (chebyshev(entries[i].color, entries[j].color) <= 2 * tolerance) {
        throw ConfigError("class colors '" + entries[i].name + "' and '" +
                          entries[j].name +
                          "' are closer than twice the tolerance");
      }
    }
  }
}

ClassColorMap load_class_color_map(const std::filesystem::path& json_path) {
  const nlohmann::ordered_json j = load_json(json_path);
  ClassColorMap map;
  try {
    map.tolerance = j.value("tolerance", 0);
    for (const auto& e : j.at("classes")) {
      ClassColorEntry entry;
      entry.name = e.at("name").get<std::string>();
      entry.class_id = e.at("class_id").get<int>();
      const auto& c = e.at("color");
      entry.color = Rgb8{c.at(0).get<uint8_t>(), c.at(1).get<uint8_t>(),
                         c.at(2).get<uint8_t>()};
      map.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw ConfigError(json_path.string() + ": " + e.what());
  }
  map.validate();
  return map;
}

Point2 Region::centroid() const {
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pixels) {
    sx += x + 0.5;
    sy += y + 0.5;
  }
  const double n = static_cast<double>(pixels.size());
  return Point2{sx / n, sy / n};
}

std::vector<Region> extract_class_regions(const RasterRgb8& label_raster,
                                          Rgb8 class_color, int tolerance) {
  const int w = label_raster.width();
  const int h = label_raster.height();
  std::vector<uint8_t> match(static_cast<size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      match[static_cast<size_t>(y) * w + x] =
          chebyshev(label_raster.at(x, y), class_color) <= tolerance ? 1 : 0;
    }
  }

  std::vector<Region> regions;
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const size_t idx = static_cast<size_t>(y) * w + x;
      if (match[idx] != 1) continue;
      Region region;
      match[idx] = 2;  // visited
      stack.assign(1, static_cast<int>(idx));
      while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int cx = cur % w;
        const int cy = cur / w;
        region.pixels.emplace_back(cx, cy);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const size_t nidx = static_cast<size_t>(ny) * w + nx;
            if (match[nidx] != 1) continue;
            match[nidx] = 2;
            stack.push_back(static_cast<int>(nidx));
          }
        }
      }
      std::sort(region.pixels.begin(), region.pixels.end(),
                [](const auto& a, const auto& b) {
                  return a.second < b.second ||
                         (a.second == b.second && a.first < b.first);
                });
      regions.push_back(std::move(region));
    }
  }
  return regions;
}

std::vector<RegionExclusion> load_exclusions(
    const std::filesystem::path& json_path) {
  const nlohmann::ordered_json j = load_json(json_path);
  std::vector<RegionExclusion> out;
  try {
    for (const auto& e : j) {
      out.push_back(RegionExclusion{e.at("cx").get<double>(),
                                    e.at("cy").get<double>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(json_path.string() + ": " + e.what());
  }
  return out;
}

std::vector<size_t> resolve_exclusions(
    const std::vector<Region>& regions,
    const std::vector<RegionExclusion>& exclusions) {
  std::vector<size_t> ids;
  for (const RegionExclusion& ex : exclusions) {
    for (size_t i = 0; i < regions.size(); ++i) {
      const Point2 c = regions[i].centroid();
      if (std::abs(c.x - ex.cx) <= 0.5 && std::abs(c.y - ex.cy) <= 0.5) {
        ids.push_back(i);
      }
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<Annotation> regions_to_annotations(
    const std::vector<Region>& regions, int class_id, int64_t min_area_px,
    const std::vector<size_t>& excluded_ids) {
  std::vector<Annotation> out;
  for (size_t i = 0; i < regions.size(); ++i) {
    if (std::binary_search(excluded_ids.begin(), excluded_ids.end(), i)) {
      continue;
    }
    const Region& region = regions[i];
    if (region.area() < min_area_px) continue;
    // Pixel centers plus a half-pixel dilation: a w x h block recovers
    // exactly w x h, and rotated shapes stay well inside a 1 px error.
    std::vector<Point2> pts;
    pts.reserve(region.pixels.size());
    for (const auto& [x, y] : region.pixels) {
      pts.push_back({x + 0.5, y + 0.5});
    }
    Annotation ann;
    ann.class_id = class_id;
    try {
      ann.obb = dilated(min_area_rect(pts), 0.5);
    } catch (const DataError&) {
      // thin region (collinear centers): fall back to the pixel corners
      pts.clear();
      for (const auto& [x, y] : region.pixels) {
        pts.push_back({static_cast<double>(x), static_cast<double>(y)});
        pts.push_back({static_cast<double>(x + 1), static_cast<double>(y)});
        pts.push_back({static_cast<double>(x), static_cast<double>(y + 1)});
        pts.push_back(
            {static_cast<double>(x + 1), static_cast<double>(y + 1)});
      }
      ann.obb = min_area_rect(pts);
    }
    ann.aabb = aabb_of(ann.obb);
    ann.provenance = "region:" + std::to_string(i);
    out.push_back(std::move(ann));
  }
  return out;
}

ConvertedTile convert_tile(const RasterRgb8& rgb_raster,
                           const RasterRgb8& label_raster,
                           const ClassColorMap& class_map, int64_t min_area_px,
                           const std::vector<RegionExclusion>& exclusions) {
  if (rgb_raster.width() != label_raster.width() ||
      rgb_raster.height() != label_raster.height()) {
    throw DataError("rgb and label rasters have different dimensions");
  }
  class_map.validate();
  ConvertedTile tile;
  tile.width = rgb_raster.width();
  tile.height = rgb_raster.height();
  for (const ClassColorEntry& entry : class_map.entries) {
    const auto regions =
        extract_class_regions(label_raster, entry.color, class_map.tolerance);
    const auto excluded = resolve_exclusions(regions, exclusions);
    auto annotations =
        regions_to_annotations(regions, entry.class_id, min_area_px, excluded);
    for (Annotation& ann : annotations) {
      ann.provenance = entry.name + ":" + ann.provenance;
      tile.annotations.push_back(std::move(ann));
    }
  }
  return tile;
}

}  // namespace aerogen
