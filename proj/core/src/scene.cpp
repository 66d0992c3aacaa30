#include "aerogen/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "aerogen/errors.hpp"
#include "aerogen/parallel.hpp"
#include "aerogen/png_io.hpp"
#include "aerogen/resample.hpp"
#include "aerogen/version.hpp"

namespace aerogen {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kPlacementAttempts = 100;

const char* outline_mode_name(OutlineMode m) {
  return m == OutlineMode::Black ? "black" : "body";
}

OutlineMode outline_mode_from_name(const std::string& name) {
  if (name == "black") return OutlineMode::Black;
  if (name == "body") return OutlineMode::Body;
  throw ConfigError("unknown outline_mode: " + name);
}

}  // namespace

void GeneratorConfig::validate() const {
  if (canvas_px < 64) throw ConfigError("canvas_px must be >= 64");
  if (!(gsd > 0.0)) throw ConfigError("gsd must be positive");
  if (fine_noise_var < 0.0 || rough_noise_var < 0.0) {
    throw ConfigError("noise variances must be >= 0");
  }
  if (rough_grid < 2) throw ConfigError("rough_grid must be >= 2");
  if (vehicles_per_image < 0) {
    throw ConfigError("vehicles_per_image must be >= 0");
  }
  if (partial_per_image < 0 || partial_per_image > vehicles_per_image) {
    throw ConfigError("partial_per_image must be in [0, vehicles_per_image]");
  }
  if (deform_max < 0.0) throw ConfigError("deform_max must be >= 0");
  if (image_count < 0) throw ConfigError("image_count must be >= 0");
  if (simplify_min_region_px < 0) {
    throw ConfigError("simplify_min_region_px must be >= 0");
  }
}

ordered_json GeneratorConfig::to_json() const {
  ordered_json j;
  j["canvas_px"] = canvas_px;
  j["gsd"] = gsd;
  j["base_color"] = {base_color.r, base_color.g, base_color.b};
  j["fine_noise_var"] = fine_noise_var;
  j["rough_noise_var"] = rough_noise_var;
  j["rough_grid"] = rough_grid;
  j["vehicles_per_image"] = vehicles_per_image;
  j["partial_per_image"] = partial_per_image;
  j["outline_mode"] = outline_mode_name(outline_mode);
  j["deform_max"] = deform_max;
  j["enable_fine_noise"] = enable_fine_noise;
  j["enable_rough_noise"] = enable_rough_noise;
  j["enable_cut"] = enable_cut;
  j["enable_deform"] = enable_deform;
  j["noise_over_vehicles"] = noise_over_vehicles;
  j["seed"] = seed;
  j["image_count"] = image_count;
  j["simplify_min_region_px"] = simplify_min_region_px;
  j["blueprint_dir"] = blueprint_dir;
  j["palette_file"] = palette_file;
  return j;
}

GeneratorConfig GeneratorConfig::from_json(const json& j) {
  GeneratorConfig cfg;
  try {
    cfg.canvas_px = j.value("canvas_px", cfg.canvas_px);
    cfg.gsd = j.value("gsd", cfg.gsd);
    if (j.contains("base_color")) {
      const auto& c = j["base_color"];
      cfg.base_color = Rgb8{c.at(0).get<uint8_t>(), c.at(1).get<uint8_t>(),
                            c.at(2).get<uint8_t>()};
    }
    cfg.fine_noise_var = j.value("fine_noise_var", cfg.fine_noise_var);
    cfg.rough_noise_var = j.value("rough_noise_var", cfg.rough_noise_var);
    cfg.rough_grid = j.value("rough_grid", cfg.rough_grid);
    cfg.vehicles_per_image =
        j.value("vehicles_per_image", cfg.vehicles_per_image);
    cfg.partial_per_image = j.value("partial_per_image", cfg.partial_per_image);
    if (j.contains("outline_mode")) {
      cfg.outline_mode =
          outline_mode_from_name(j["outline_mode"].get<std::string>());
    }
    cfg.deform_max = j.value("deform_max", cfg.deform_max);
    cfg.enable_fine_noise = j.value("enable_fine_noise", cfg.enable_fine_noise);
    cfg.enable_rough_noise =
        j.value("enable_rough_noise", cfg.enable_rough_noise);
    cfg.enable_cut = j.value("enable_cut", cfg.enable_cut);
    cfg.enable_deform = j.value("enable_deform", cfg.enable_deform);
    cfg.noise_over_vehicles =
        j.value("noise_over_vehicles", cfg.noise_over_vehicles);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.image_count = j.value("image_count", cfg.image_count);
    cfg.simplify_min_region_px =
        j.value("simplify_min_region_px", cfg.simplify_min_region_px);
    cfg.blueprint_dir = j.value("blueprint_dir", cfg.blueprint_dir);
    cfg.palette_file = j.value("palette_file", cfg.palette_file);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RasterF32 sample_rough_grid(int grid_n, double variance, RngStream& rng) {
  RasterF32 grid(grid_n, grid_n);
  const double stddev = std::sqrt(variance);
  for (int y = 0; y < grid_n; ++y) {
    for (int x = 0; x < grid_n; ++x) {
      grid.at(x, y) = static_cast<float>(rng.normal(0.0, stddev));
    }
  }
  return grid;
}

void add_noise(RasterRgb8& canvas, const GeneratorConfig& cfg,
               RngStream& rng) {
  if (!cfg.enable_rough_noise && !cfg.enable_fine_noise) return;
  const int n = canvas.width();
  RasterF32 offset(canvas.width(), canvas.height(), 0.0f);
  if (cfg.enable_rough_noise) {
    const RasterF32 grid =
        sample_rough_grid(cfg.rough_grid, cfg.rough_noise_var, rng);
    offset = bicubic_upsample(grid, canvas.width(), canvas.height());
  }
  if (cfg.enable_fine_noise) {
    const double stddev = std::sqrt(cfg.fine_noise_var);
    for (int y = 0; y < canvas.height(); ++y) {
      for (int x = 0; x < n; ++x) {
        offset.at(x, y) += static_cast<float>(rng.normal(0.0, stddev));
      }
    }
  }
  // one clamp after both layers are summed
  for (int y = 0; y < canvas.height(); ++y) {
    for (int x = 0; x < canvas.width(); ++x) {
      Rgb8& px = canvas.at(x, y);
      const double off = offset.at(x, y);
      const auto apply = [off](uint8_t c) {
        return static_cast<uint8_t>(
            std::clamp<long>(std::llround(c + off), 0, 255));
      };
      px = Rgb8{apply(px.r), apply(px.g), apply(px.b)};
    }
  }
}

RasterRgb8 make_background(const GeneratorConfig& cfg, RngStream& rng) {
  RasterRgb8 canvas(cfg.canvas_px, cfg.canvas_px, cfg.base_color);
  add_noise(canvas, cfg, rng);
  return canvas;
}

std::vector<Annotation> place_instances(
    RasterRgb8& canvas, const std::vector<VehicleInstance>& instances,
    RngStream& rng, int* dropped) {
  std::vector<Annotation> annotations;
  annotations.reserve(instances.size());
  std::vector<RotatedRect> placed;
  placed.reserve(instances.size());
  int drop_count = 0;

  for (const VehicleInstance& inst : instances) {
    const double w = inst.footprint_w;
    const double h = inst.footprint_h;
    bool done = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !done; ++attempt) {
      const double theta = rng.uniform(0.0, 360.0);
      const double rad = theta * 0.017453292519943295;
      const double hx =
          (w * std::abs(std::cos(rad)) + h * std::abs(std::sin(rad))) * 0.5;
      const double hy =
          (w * std::abs(std::sin(rad)) + h * std::abs(std::cos(rad))) * 0.5;
      // 0.5 px margin absorbs the later snap to the pixel grid
      const double lo_x = hx + 0.5, hi_x = canvas.width() - hx - 0.5;
      const double lo_y = hy + 0.5, hi_y = canvas.height() - hy - 0.5;
      if (lo_x > hi_x || lo_y > hi_y) continue;
      const double cx = rng.uniform(lo_x, hi_x);
      const double cy = rng.uniform(lo_y, hi_y);

      const auto [rw, rh] =
          rotated_raster_dims(inst.footprint_w, inst.footprint_h, theta);
      const long tlx = std::llround(cx - rw * 0.5);
      const long tly = std::llround(cy - rh * 0.5);
      const Point2 center{tlx + rw * 0.5, tly + rh * 0.5};
      const RotatedRect cand = make_rotated_rect(center, w, h, theta);

      bool collides = false;
      for (const RotatedRect& other : placed) {
        if (rects_intersect(cand, other)) {
          collides = true;
          break;
        }
      }
      if (collides) continue;

      const RasterRgba8 rotated = rotate_bilinear(inst.pixels, theta);
      composite_over(canvas, rotated, static_cast<int>(tlx),
                     static_cast<int>(tly));
      placed.push_back(cand);
      Annotation ann;
      ann.class_id = 0;
      ann.obb = cand;
      ann.aabb = aabb_of(cand);
      ann.is_partial = inst.is_partial;
      ann.provenance = inst.source_id;
      annotations.push_back(std::move(ann));
      done = true;
    }
    if (!done) ++drop_count;
  }
  if (dropped) *dropped = drop_count;
  return annotations;
}

RasterU8 render_seg_mask(const std::vector<Annotation>& annotations,
                         int canvas_px) {
  RasterU8 mask(canvas_px, canvas_px, 0);
  for (const Annotation& ann : annotations) {
    const AABB box = aabb_of(ann.obb);
    const int x0 = std::max(0, static_cast<int>(std::floor(box.x_min)));
    const int y0 = std::max(0, static_cast<int>(std::floor(box.y_min)));
    const int x1 =
        std::min(canvas_px - 1, static_cast<int>(std::ceil(box.x_max)));
    const int y1 =
        std::min(canvas_px - 1, static_cast<int>(std::ceil(box.y_max)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (mask.at(x, y)) continue;
        if (point_in_rect(ann.obb, Point2{x + 0.5, y + 0.5})) {
          mask.at(x, y) = 1;
        }
      }
    }
  }
  return mask;
}

SceneSources artificial_sources(const GeneratorConfig& cfg,
                                const std::vector<Blueprint>& blueprints,
                                const ColorPalette& palette) {
  if (blueprints.empty()) {
    throw DataError("artificial sources require at least one blueprint");
  }
  SceneSources src;
  src.vehicles = [&cfg, &blueprints, &palette](RngStream& rng) {
    const int n = cfg.vehicles_per_image;
    std::vector<size_t> picks(n);
    for (int i = 0; i < n; ++i) {
      picks[i] = rng.uniform_int(blueprints.size());
    }
    std::vector<VehicleInstance> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      out.push_back(
          colorize(blueprints[picks[i]], palette, cfg.outline_mode, rng));
    }
    if (cfg.enable_cut && cfg.partial_per_image > 0 && n > 0) {
      // partial Fisher-Yates: k distinct indices, then ascending order
      std::vector<int> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      const int k = std::min(cfg.partial_per_image, n);
      for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.uniform_int(n - i));
        std::swap(idx[i], idx[j]);
      }
      std::sort(idx.begin(), idx.begin() + k);
      for (int i = 0; i < k; ++i) {
        out[idx[i]] = cut_partial(std::move(out[idx[i]]), rng);
      }
    }
    if (cfg.enable_deform) {
      for (auto& inst : out) {
        inst = deform(std::move(inst), cfg.deform_max, rng);
      }
    }
    return out;
  };
  src.background = [&cfg](RngStream& rng, std::string*) {
    if (cfg.noise_over_vehicles) {
      return RasterRgb8(cfg.canvas_px, cfg.canvas_px, cfg.base_color);
    }
    return make_background(cfg, rng);
  };
  return src;
}

GeneratedImage generate_scene(const GeneratorConfig& cfg, int index,
                              const SceneSources& sources) {
  if (index < 0 || index >= cfg.image_count) {
    throw ConfigError("image index out of range");
  }
  GeneratedImage img;
  img.index = index;
  img.rng_stream_id = derive_stream_id(cfg.seed, index);
  RngStream rng(img.rng_stream_id);

  const std::vector<VehicleInstance> instances = sources.vehicles(rng);
  img.pixels = sources.background(rng, &img.background_provenance);
  if (img.pixels.width() != cfg.canvas_px ||
      img.pixels.height() != cfg.canvas_px) {
    throw DataError("background size does not match canvas_px");
  }
  img.annotations = place_instances(img.pixels, instances, rng, &img.dropped);
  if (cfg.noise_over_vehicles) {
    add_noise(img.pixels, cfg, rng);
  }
  img.seg_mask = render_seg_mask(img.annotations, cfg.canvas_px);
  return img;
}

GeneratedImage generate_image(const GeneratorConfig& cfg,
                              const std::vector<Blueprint>& blueprints,
                              const ColorPalette& palette, int index) {
  return generate_scene(cfg, index,
                        artificial_sources(cfg, blueprints, palette));
}

std::string image_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "img_%06d.png", index);
  return buf;
}

std::string seg_mask_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "seg_%06d.png", index);
  return buf;
}

DatasetManifest write_dataset(
    const GeneratorConfig& cfg, const SceneSources& sources,
    const std::filesystem::path& out_dir, int workers,
    const std::function<void(ordered_json&)>& decorate) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);

  std::vector<ImageRecord> records(cfg.image_count);
  parallel_for(cfg.image_count, workers, [&](int64_t i) {
    const int index = static_cast<int>(i);
    GeneratedImage img = generate_scene(cfg, index, sources);

    write_png(out_dir / image_file_name(index), img.pixels);
    RasterU8 seg(img.seg_mask.width(), img.seg_mask.height());
    for (int y = 0; y < seg.height(); ++y) {
      for (int x = 0; x < seg.width(); ++x) {
        seg.at(x, y) = img.seg_mask.at(x, y) ? 255 : 0;
      }
    }
    write_png(out_dir / seg_mask_file_name(index), seg);

    ImageRecord rec;
    char id[16];
    std::snprintf(id, sizeof(id), "img_%06d", index);
    rec.id = id;
    rec.file = image_file_name(index);
    rec.width = cfg.canvas_px;
    rec.height = cfg.canvas_px;
    rec.gsd = cfg.gsd;
    rec.annotations = std::move(img.annotations);
    rec.seg_mask_file = seg_mask_file_name(index);
    rec.dropped = img.dropped;
    rec.background_provenance = img.background_provenance;
    records[i] = std::move(rec);
  });

  DatasetManifest manifest;
  manifest.tool_version = kToolVersion;
  manifest.config = cfg.to_json();
  manifest.images = std::move(records);

  ordered_json j = manifest_to_json(manifest);
  if (decorate) decorate(j);
  save_json(out_dir / "manifest.json", j);
  return manifest;
}

std::vector<Blueprint> prepare_blueprints(const GeneratorConfig& cfg) {
  if (cfg.blueprint_dir.empty()) {
    throw ConfigError("blueprint_dir is not set");
  }
  std::vector<Blueprint> set = load_blueprint_set(cfg.blueprint_dir);
  for (Blueprint& b : set) {
    b = rescale(simplify(b, cfg.simplify_min_region_px), cfg.gsd);
  }
  return set;
}

ColorPalette palette_for(const GeneratorConfig& cfg) {
  if (cfg.palette_file.empty()) return default_palette();
  return load_palette(cfg.palette_file);
}

DatasetManifest generate_dataset(const GeneratorConfig& cfg,
                                 const std::filesystem::path& out_dir,
                                 int workers) {
  cfg.validate();
  const std::vector<Blueprint> blueprints = prepare_blueprints(cfg);
  const ColorPalette palette = palette_for(cfg);
  return write_dataset(cfg, artificial_sources(cfg, blueprints, palette),
                       out_dir, workers);
}

}  // namespace aerogen
