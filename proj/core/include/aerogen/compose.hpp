#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aerogen/manifest.hpp"
#include "aerogen/raster.hpp"
#include "aerogen/scene.hpp"

namespace aerogen {

enum class Source { Artificial, Real };

const char* source_name(Source s);
Source source_from_name(const std::string& name);

// Vehicle-free patches usable as real backgrounds.
struct BackgroundPool {
  std::vector<std::string> ids;
  std::vector<RasterRgb8> patches;

  size_t size() const { return patches.size(); }
};

// Rotated crops of annotated real vehicles. The alpha support of each crop is
// the full object-aligned rectangle (the paste keeps the rectangular seam).
struct VehicleCrop {
  RasterRgba8 pixels;
  std::string provenance;  // crop:<image id>#<annotation index>
};

struct VehicleCropPool {
  std::vector<VehicleCrop> crops;

  size_t size() const { return crops.size(); }
};

// Collects exactly the zero-annotation patches of a manifest; image files are
// resolved relative to manifest_dir. Throws DataError when no patch
// qualifies (composition with real backgrounds would be impossible).
BackgroundPool harvest_backgrounds(const DatasetManifest& manifest,
                                   const std::filesystem::path& manifest_dir);

// Extracts one axis-aligned crop per annotation by sampling its obb region
// (bilinear); crop size is round(w) x round(h).
VehicleCropPool harvest_vehicles(const DatasetManifest& manifest,
                                 const std::filesystem::path& manifest_dir);

// Builds one of the four vehicle/background combinations. Artificial sources
// reuse the generator pipeline; real sources draw uniformly (with
// replacement) from the pools. (artificial, artificial) output is
// byte-identical to generate_dataset under the same config and seed.
DatasetManifest compose_dataset(Source vehicle_source, Source background_source,
                                const GeneratorConfig& cfg,
                                const BackgroundPool* backgrounds,
                                const VehicleCropPool* vehicles,
                                const std::filesystem::path& out_dir,
                                int workers);

}  // namespace aerogen
