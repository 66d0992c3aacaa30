#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aerogen/blueprint.hpp"
#include "aerogen/instance.hpp"
#include "aerogen/manifest.hpp"
#include "aerogen/raster.hpp"
#include "aerogen/rng.hpp"

namespace aerogen {

// Every generator knob. Serialized verbatim into dataset manifests so any
// output can be reproduced from its manifest alone.
struct GeneratorConfig {
  int canvas_px = 600;
  double gsd = 0.10;                  // meters per pixel
  Rgb8 base_color{124, 117, 104};     // ImageNet per-channel mean, 8-bit
  double fine_noise_var = 5.0;        // per-pixel, intensity^2
  double rough_noise_var = 10.0;      // coarse grid, intensity^2
  int rough_grid = 10;                // grid side count
  int vehicles_per_image = 10;
  int partial_per_image = 3;
  OutlineMode outline_mode = OutlineMode::Black;
  double deform_max = 0.05;
  bool enable_fine_noise = true;
  bool enable_rough_noise = true;
  bool enable_cut = true;
  bool enable_deform = true;
  bool noise_over_vehicles = false;   // add noise after compositing instead
  uint64_t seed = 0;
  int image_count = 1000;
  int simplify_min_region_px = 4;
  std::string blueprint_dir;
  std::string palette_file;           // empty -> built-in palette

  void validate() const;
  nlohmann::ordered_json to_json() const;
  static GeneratorConfig from_json(const nlohmann::json& j);
};

struct GeneratedImage {
  RasterRgb8 pixels;
  std::vector<Annotation> annotations;
  RasterU8 seg_mask;  // 0/1
  int index = 0;
  uint64_t rng_stream_id = 0;
  int dropped = 0;
  std::string background_provenance;
};

// Gaussian grid used for the rough noise layer; exposed for statistics.
RasterF32 sample_rough_grid(int grid_n, double variance, RngStream& rng);

// Adds the enabled noise layers (rough grid upsampled bicubically, then
// per-pixel fine noise; both achromatic) on top of the current canvas
// content, clamping to [0, 255] once after both layers are summed.
void add_noise(RasterRgb8& canvas, const GeneratorConfig& cfg, RngStream& rng);

// Base-color canvas plus enabled noise layers.
RasterRgb8 make_background(const GeneratorConfig& cfg, RngStream& rng);

// Random pose placement: per attempt draws rotation, then a center uniform
// over the positions keeping the object-aligned box fully inside the canvas;
// rejects poses intersecting any previously placed box. An instance failing
// 100 attempts is dropped (counted, never fatal). Placed instances are
// rotated bilinearly and alpha-composited.
std::vector<Annotation> place_instances(
    RasterRgb8& canvas, const std::vector<VehicleInstance>& instances,
    RngStream& rng, int* dropped = nullptr);

// Binary mask: pixel is 1 iff its center lies inside at least one obb.
RasterU8 render_seg_mask(const std::vector<Annotation>& annotations,
                         int canvas_px);

// Pluggable per-image content sources; both draw from the same stream, in
// this order: vehicles, then background, then placement.
struct SceneSources {
  std::function<std::vector<VehicleInstance>(RngStream&)> vehicles;
  // Returns the pre-placement canvas and, optionally, its provenance tag.
  std::function<RasterRgb8(RngStream&, std::string*)> background;
};

// Artificial sources backed by the blueprint/instance pipeline. `blueprints`
// must already be simplified and rescaled to cfg.gsd and sorted by id.
SceneSources artificial_sources(const GeneratorConfig& cfg,
                                const std::vector<Blueprint>& blueprints,
                                const ColorPalette& palette);

// Deterministic function of (cfg.seed, index): derives the image stream and
// runs sources + placement (+ post noise when noise_over_vehicles).
GeneratedImage generate_scene(const GeneratorConfig& cfg, int index,
                              const SceneSources& sources);

// Artificial-only convenience wrapper.
GeneratedImage generate_image(const GeneratorConfig& cfg,
                              const std::vector<Blueprint>& blueprints,
                              const ColorPalette& palette, int index);

// Renders image_count scenes in parallel, writes img_/seg_ PNGs and the
// manifest. `decorate` may add keys to the manifest root (compose uses it).
DatasetManifest write_dataset(
    const GeneratorConfig& cfg, const SceneSources& sources,
    const std::filesystem::path& out_dir, int workers,
    const std::function<void(nlohmann::ordered_json&)>& decorate = {});

// Loads blueprints + palette from cfg and writes the full dataset.
DatasetManifest generate_dataset(const GeneratorConfig& cfg,
                                 const std::filesystem::path& out_dir,
                                 int workers);

// prepare step shared by generate/compose/CLI: load, simplify, rescale.
std::vector<Blueprint> prepare_blueprints(const GeneratorConfig& cfg);
ColorPalette palette_for(const GeneratorConfig& cfg);

std::string image_file_name(int index);
std::string seg_mask_file_name(int index);

}  // namespace aerogen
