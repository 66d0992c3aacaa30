#include "aerogen/compose.hpp"

#include <cmath>
#include <utility>

#include "aerogen/errors.hpp"
#include "aerogen/png_io.hpp"
#include "aerogen/resample.hpp"

namespace aerogen {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

VehicleCrop crop_annotation(const RasterRgb8& image, const Annotation& ann,
                            const std::string& image_id, int ann_index) {
  const RotatedRect& obb = ann.obb;
  const int cw = std::max(1, static_cast<int>(std::llround(obb.width)));
  const int ch = std::max(1, static_cast<int>(std::llround(obb.height)));
  const double rad = obb.angle_deg * (kPi / 180.0);
  const double c = std::cos(rad);
  const double s = std::sin(rad);

  VehicleCrop crop;
  crop.pixels = RasterRgba8(cw, ch);
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      // crop pixel center in the rectangle frame, spanning [-w/2, w/2]
      const double u = ((x + 0.5) / cw - 0.5) * obb.width;
      const double v = ((y + 0.5) / ch - 0.5) * obb.height;
      const double sx = obb.center.x + u * c - v * s;
      const double sy = obb.center.y + u * s + v * c;
      // bilinear fetch with edge clamp
      const double gx = sx - 0.5;
      const double gy = sy - 0.5;
      const int x0 = static_cast<int>(std::floor(gx));
      const int y0 = static_cast<int>(std::floor(gy));
      const double tx = gx - x0;
      const double ty = gy - y0;
      double r = 0, g = 0, b = 0;
      for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
          const int px = std::clamp(x0 + i, 0, image.width() - 1);
          const int py = std::clamp(y0 + j, 0, image.height() - 1);
          const double w = (i ? tx : 1.0 - tx) * (j ? ty : 1.0 - ty);
          const Rgb8& p = image.at(px, py);
          r += w * p.r;
          g += w * p.g;
          b += w * p.b;
        }
      }
      const auto to_u8 = [](double v8) {
        return static_cast<uint8_t>(std::clamp<long>(std::llround(v8), 0, 255));
      };
      crop.pixels.at(x, y) = Rgba8{to_u8(r), to_u8(g), to_u8(b), 255};
    }
  }
  crop.provenance = "crop:" + image_id + "#" + std::to_string(ann_index);
  return crop;
}

}  // namespace

const char* source_name(Source s) {
  return s == Source::Artificial ? "artificial" : "real";
}

Source source_from_name(const std::string& name) {
  if (name == "artificial") return Source::Artificial;
  if (name == "real") return Source::Real;
  throw ConfigError("unknown source: " + name + " (artificial|real)");
}

BackgroundPool harvest_backgrounds(const DatasetManifest& manifest,
                                   const std::filesystem::path& manifest_dir) {
  BackgroundPool pool;
  for (const ImageRecord& rec : manifest.images) {
    if (!rec.annotations.empty()) continue;
    pool.ids.push_back(rec.id);
    pool.patches.push_back(read_png_rgb8(manifest_dir / rec.file));
  }
  if (pool.patches.empty()) {
    throw DataError(
        "background pool is empty: no zero-annotation patches in manifest");
  }
  return pool;
}

VehicleCropPool harvest_vehicles(const DatasetManifest& manifest,
                                 const std::filesystem::path& manifest_dir) {
  VehicleCropPool pool;
  for (const ImageRecord& rec : manifest.images) {
    if (rec.annotations.empty()) continue;
    const RasterRgb8 image = read_png_rgb8(manifest_dir / rec.file);
    for (size_t i = 0; i < rec.annotations.size(); ++i) {
      pool.crops.push_back(crop_annotation(
          image, rec.annotations[i], rec.id, static_cast<int>(i)));
    }
  }
  return pool;
}

DatasetManifest compose_dataset(Source vehicle_source,
                                Source background_source,
                                const GeneratorConfig& cfg,
                                const BackgroundPool* backgrounds,
                                const VehicleCropPool* vehicles,
                                const std::filesystem::path& out_dir,
                                int workers) {
  cfg.validate();
  if (background_source == Source::Real &&
      (!backgrounds || backgrounds->size() == 0)) {
    throw DataError("real background source requires a background pool");
  }
  if (vehicle_source == Source::Real && (!vehicles || vehicles->size() == 0)) {
    throw DataError("real vehicle source requires a vehicle crop pool");
  }

  // Artificial halves reuse the generator pipeline so the
  // (artificial, artificial) combination reproduces generate_dataset bytes.
  std::vector<Blueprint> blueprints;
  ColorPalette palette;
  SceneSources sources;
  if (vehicle_source == Source::Artificial) {
    blueprints = prepare_blueprints(cfg);
    palette = palette_for(cfg);
    sources.vehicles = artificial_sources(cfg, blueprints, palette).vehicles;
  } else {
    sources.vehicles = [&cfg, vehicles](RngStream& rng) {
      std::vector<VehicleInstance> out;
      out.reserve(cfg.vehicles_per_image);
      for (int i = 0; i < cfg.vehicles_per_image; ++i) {
        const VehicleCrop& crop =
            vehicles->crops[rng.uniform_int(vehicles->size())];
        VehicleInstance inst;
        inst.pixels = crop.pixels;
        inst.footprint_w = crop.pixels.width();
        inst.footprint_h = crop.pixels.height();
        inst.source_id = crop.provenance;
        out.push_back(std::move(inst));
      }
      return out;
    };
  }
  if (background_source == Source::Artificial) {
    sources.background = [&cfg](RngStream& rng, std::string*) {
      if (cfg.noise_over_vehicles) {
        return RasterRgb8(cfg.canvas_px, cfg.canvas_px, cfg.base_color);
      }
      return make_background(cfg, rng);
    };
  } else {
    sources.background = [&cfg, backgrounds](RngStream& rng,
                                             std::string* provenance) {
      const size_t pick = rng.uniform_int(backgrounds->size());
      const RasterRgb8& patch = backgrounds->patches[pick];
      if (patch.width() != cfg.canvas_px || patch.height() != cfg.canvas_px) {
        throw DataError("background patch " + backgrounds->ids[pick] +
                        " does not match canvas_px " +
                        std::to_string(cfg.canvas_px));
      }
      if (provenance) *provenance = "pool:" + backgrounds->ids[pick];
      return patch;
    };
  }

  const bool pure_artificial = vehicle_source == Source::Artificial &&
                               background_source == Source::Artificial;
  const auto decorate = [&](nlohmann::ordered_json& j) {
    if (pure_artificial) return;  // keep bytes identical to generate
    j["compose"] = {{"vehicle_source", source_name(vehicle_source)},
                    {"background_source", source_name(background_source)}};
  };
  return write_dataset(cfg, sources, out_dir, workers, decorate);
}

}  // namespace aerogen
