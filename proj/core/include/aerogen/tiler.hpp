#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aerogen/manifest.hpp"
#include "aerogen/raster.hpp"

namespace aerogen {

struct TilingSpec {
  int patch_px = 600;
  int overlap_px = 200;
  int output_px = 300;
  double min_annotation_px = 20.0;
  bool drop_empty = true;

  void validate() const;
};

// Patch offsets along one axis: stride = patch - overlap, the last offset
// clamped so no patch exceeds the raster.
std::vector<int> tile_positions(int extent_px, int patch_px, int overlap_px);

struct Patch {
  int row = 0;
  int col = 0;
  int x0 = 0;
  int y0 = 0;
  RasterRgb8 pixels;
  std::vector<Annotation> annotations;
  double gsd = 0.0;
};

// Cuts one annotated raster into overlapping patches. Annotations are
// offset-shifted; boxes crossing a patch border are clipped (the clipped obb
// is the minimum-area rectangle of the clipped corner polygon) and dropped
// when the clip leaves min(width, height) below min_annotation_px. Patches
// without annotations are dropped when drop_empty is set.
std::vector<Patch> tile(const RasterRgb8& image,
                        const std::vector<Annotation>& annotations, double gsd,
                        const TilingSpec& spec);

// Area-average downsample to output_px; annotation coordinates scale by
// output_px / patch_px and the gsd by patch_px / output_px.
Patch resample(Patch patch, int output_px);

// Deterministic image-level split; |val| = round-half-up(val_fraction * N).
// Records keep their order (sorted by id) and get split tags.
void split(const DatasetManifest& manifest, double val_fraction, uint64_t seed,
           DatasetManifest& train_out, DatasetManifest& val_out);

// Uniform sample of n images without replacement, output sorted by id.
DatasetManifest subsample(const DatasetManifest& manifest, int64_t n,
                          uint64_t seed);

std::string patch_id(const std::string& tile_id, int row, int col);

}  // namespace aerogen
