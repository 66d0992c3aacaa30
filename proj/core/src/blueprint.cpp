#include "aerogen/blueprint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "aerogen/errors.hpp"
#include "aerogen/png_io.hpp"
#include "aerogen/resample.hpp"

namespace aerogen {

namespace {

using nlohmann::json;

constexpr std::array<const char*, kSurfaceClassCount> kClassNames = {
    "background", "outline", "body", "lights", "windows"};

int chebyshev(const Rgb8& a, const Rgb8& b) {
  return std::max({std::abs(a.r - b.r), std::abs(a.g - b.g),
                   std::abs(a.b - b.b)});
}

int64_t sq_dist(const Rgb8& a, const Rgb8& b) {
  const int64_t dr = a.r - b.r;
  const int64_t dg = a.g - b.g;
  const int64_t db = a.b - b.b;
  return dr * dr + dg * dg + db * db;
}

Rgb8 rgb_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(what + " must be an [r, g, b] triple");
  }
  const auto chan = [&](size_t i) {
    const int v = j[i].get<int>();
    if (v < 0 || v > 255) throw ConfigError(what + " channel out of range");
    return static_cast<uint8_t>(v);
  };
  return Rgb8{chan(0), chan(1), chan(2)};
}

struct RegionInfo {
  SurfaceClass cls;
  std::vector<int> pixels;  // linear indices
};

// 4-connected regions of non-Background classes, row-major discovery order.
std::vector<RegionInfo> label_regions(const Raster<SurfaceClass>& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> region_of(static_cast<size_t>(w) * h, -1);
  std::vector<RegionInfo> regions;
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int idx = y * w + x;
      if (region_of[idx] >= 0) continue;
      const SurfaceClass cls = mask.at(x, y);
      if (cls == SurfaceClass::Background) continue;
      const int id = static_cast<int>(regions.size());
      regions.push_back({cls, {}});
      region_of[idx] = id;
      stack.assign(1, idx);
      while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        regions[id].pixels.push_back(cur);
        const int cx = cur % w;
        const int cy = cur / w;
        const int nbers[4][2] = {{cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1},
                                 {cx, cy + 1}};
        for (const auto& nb : nbers) {
          if (nb[0] < 0 || nb[0] >= w || nb[1] < 0 || nb[1] >= h) continue;
          const int nidx = nb[1] * w + nb[0];
          if (region_of[nidx] >= 0 || mask.at(nb[0], nb[1]) != cls) continue;
          region_of[nidx] = id;
          stack.push_back(nidx);
        }
      }
    }
  }
  return regions;
}

}  // namespace

const char* surface_class_name(SurfaceClass c) {
  return kClassNames[static_cast<int>(c)];
}

std::optional<SurfaceClass> surface_class_from_name(std::string_view name) {
  for (int i = 0; i < kSurfaceClassCount; ++i) {
    if (name == kClassNames[i]) return static_cast<SurfaceClass>(i);
  }
  return std::nullopt;
}

ColorKey default_color_key() {
  ColorKey key;
  key.colors[static_cast<int>(SurfaceClass::Background)] = {255, 255, 255};
  key.colors[static_cast<int>(SurfaceClass::Outline)] = {0, 0, 0};
  key.colors[static_cast<int>(SurfaceClass::Body)] = {255, 0, 0};
  key.colors[static_cast<int>(SurfaceClass::Lights)] = {255, 255, 0};
  key.colors[static_cast<int>(SurfaceClass::Windows)] = {0, 0, 255};
  key.tolerance = 10;
  return key;
}

BlueprintMeta read_blueprint_meta(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open " + json_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(json_path.string() + ": " + e.what());
  }
  BlueprintMeta meta;
  try {
    meta.id = j.at("id").get<std::string>();
    meta.vehicle_label = j.at("vehicle_label").get<std::string>();
    meta.physical_length_m = j.at("physical_length_m").get<double>();
    meta.physical_width_m = j.at("physical_width_m").get<double>();
    if (j.contains("color_key")) {
      const json& ck = j["color_key"];
      for (int i = 0; i < kSurfaceClassCount; ++i) {
        meta.color_key.colors[i] =
            rgb_from_json(ck.at(kClassNames[i]), kClassNames[i]);
      }
      if (ck.contains("tolerance")) {
        meta.color_key.tolerance = ck["tolerance"].get<int>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(json_path.string() + ": " + e.what());
  }
  return meta;
}

Blueprint make_blueprint(std::string id, std::string vehicle_label,
                         Raster<SurfaceClass> mask, double physical_length_m,
                         double physical_width_m) {
  if (!(physical_length_m > 0.0) || !(physical_width_m > 0.0)) {
    throw DataError("blueprint " + id + ": physical dims must be positive");
  }
  const int length_px = std::max(mask.width(), mask.height());
  const int width_px = std::min(mask.width(), mask.height());
  const double pitch = physical_length_m / length_px;
  if (std::abs(width_px - physical_width_m / pitch) > 1.0 + 1e-9) {
    throw DataError("blueprint " + id +
                    ": mask dimensions inconsistent with physical dims");
  }
  bool has_body = false;
  for (const SurfaceClass c : mask) {
    if (c == SurfaceClass::Body) {
      has_body = true;
      break;
    }
  }
  if (!has_body) {
    throw DataError("blueprint " + id + ": empty vehicle (no body pixels)");
  }
  return Blueprint{std::move(id), std::move(vehicle_label), std::move(mask),
                   pitch, physical_length_m, physical_width_m};
}

Blueprint load_blueprint(const std::filesystem::path& image_path,
                         const BlueprintMeta& meta) {
  const RasterRgb8 image = read_png_rgb8(image_path);
  Raster<SurfaceClass> mask(image.width(), image.height());
  int64_t off_key = 0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgb8& px = image.at(x, y);
      int best = 0;
      int64_t best_d = sq_dist(px, meta.color_key.colors[0]);
      bool within = chebyshev(px, meta.color_key.colors[0]) <=
                    meta.color_key.tolerance;
      for (int c = 1; c < kSurfaceClassCount; ++c) {
        const int64_t d = sq_dist(px, meta.color_key.colors[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
        within = within || chebyshev(px, meta.color_key.colors[c]) <=
                               meta.color_key.tolerance;
      }
      if (!within) ++off_key;
      mask.at(x, y) = static_cast<SurfaceClass>(best);
    }
  }
  if (off_key * 200 > static_cast<int64_t>(mask.pixel_count())) {  // > 0.5%
    throw DataError("blueprint mask " + image_path.string() + ": " +
                    std::to_string(off_key) +
                    " pixels outside tolerance of every key color");
  }
  return make_blueprint(meta.id, meta.vehicle_label, std::move(mask),
                        meta.physical_length_m, meta.physical_width_m);
}

Blueprint load_blueprint(const std::filesystem::path& image_path) {
  std::filesystem::path sidecar = image_path;
  sidecar.replace_extension(".json");
  return load_blueprint(image_path, read_blueprint_meta(sidecar));
}

Blueprint simplify(const Blueprint& b, int min_region_px) {
  if (min_region_px < 0) {
    throw ConfigError("simplify: min_region_px must be >= 0");
  }
  Blueprint out = b;
  if (min_region_px == 0) return out;
  const int w = out.mask.width();
  while (true) {
    const auto regions = label_regions(out.mask);
    bool changed = false;
    std::vector<std::pair<const RegionInfo*, SurfaceClass>> updates;
    for (const RegionInfo& region : regions) {
      if (static_cast<int64_t>(region.pixels.size()) >= min_region_px) {
        continue;
      }
      std::vector<int> boundary;
      for (const int idx : region.pixels) {
        const int x = idx % w;
        const int y = idx / w;
        const int nbers[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1},
                                 {x, y + 1}};
        for (const auto& nb : nbers) {
          if (!out.mask.in_bounds(nb[0], nb[1])) continue;
          if (out.mask.at(nb[0], nb[1]) == region.cls) continue;
          boundary.push_back(nb[1] * w + nb[0]);
        }
      }
      std::sort(boundary.begin(), boundary.end());
      boundary.erase(std::unique(boundary.begin(), boundary.end()),
                     boundary.end());
      if (boundary.empty()) continue;  // region fills the raster
      std::array<int64_t, kSurfaceClassCount> votes{};
      for (const int idx : boundary) {
        ++votes[static_cast<int>(out.mask.at(idx % w, idx / w))];
      }
      int majority = 0;
      for (int c = 1; c < kSurfaceClassCount; ++c) {
        if (votes[c] > votes[majority]) majority = c;
      }
      updates.emplace_back(&region, static_cast<SurfaceClass>(majority));
    }
    for (const auto& [region, cls] : updates) {
      for (const int idx : region->pixels) {
        out.mask.at(idx % w, idx / w) = cls;
      }
      changed = true;
    }
    if (!changed) break;
  }
  return out;
}

Blueprint rescale(const Blueprint& b, double target_gsd) {
  if (!(target_gsd > 0.0)) {
    throw ConfigError("rescale: target gsd must be positive");
  }
  const double s = b.pixel_pitch / target_gsd;
  const int out_w = static_cast<int>(std::llround(b.mask.width() * s));
  const int out_h = static_cast<int>(std::llround(b.mask.height() * s));
  if (out_w < 2 || out_h < 2) {
    throw DataError("blueprint " + b.id + ": rescale to " +
                    std::to_string(target_gsd) +
                    " m/px leaves fewer than 2x2 pixels");
  }
  Blueprint out = b;
  if (out_w == b.mask.width() && out_h == b.mask.height()) {
    out.pixel_pitch = target_gsd;
    return out;
  }
  RasterU8 tmp(b.mask.width(), b.mask.height());
  for (int y = 0; y < b.mask.height(); ++y) {
    for (int x = 0; x < b.mask.width(); ++x) {
      tmp.at(x, y) = static_cast<uint8_t>(b.mask.at(x, y));
    }
  }
  const RasterU8 scaled = resample_mode(tmp, out_w, out_h);
  Raster<SurfaceClass> mask(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      mask.at(x, y) = static_cast<SurfaceClass>(scaled.at(x, y));
    }
  }
  out.mask = std::move(mask);
  out.pixel_pitch = target_gsd;
  return out;
}

std::array<int64_t, kSurfaceClassCount> class_histogram(const Blueprint& b) {
  std::array<int64_t, kSurfaceClassCount> hist{};
  for (const SurfaceClass c : b.mask) ++hist[static_cast<int>(c)];
  return hist;
}

std::vector<Blueprint> load_blueprint_set(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("blueprint directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> images;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".png") images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end());
  if (images.empty()) {
    throw DataError("no blueprint masks (*.png) in " + dir.string());
  }
  std::vector<Blueprint> out;
  out.reserve(images.size());
  for (const auto& path : images) out.push_back(load_blueprint(path));
  std::sort(out.begin(), out.end(),
            [](const Blueprint& a, const Blueprint& b) { return a.id < b.id; });
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i].id == out[i - 1].id) {
      throw DataError("duplicate blueprint id: " + out[i].id);
    }
  }
  return out;
}

}  // namespace aerogen
