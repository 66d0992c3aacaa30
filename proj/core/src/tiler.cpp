#include "aerogen/tiler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aerogen/errors.hpp"
#include "aerogen/geometry.hpp"
#include "aerogen/resample.hpp"
#include "aerogen/rng.hpp"

namespace aerogen {

namespace {

constexpr uint64_t kSplitStream = 0x73706c6974ull;   // "split"
constexpr uint64_t kSubsampleStream = 0x737562ull;   // "sub"

// Sutherland-Hodgman clip of a convex polygon against an axis-aligned window.
std::vector<Point2> clip_polygon(const std::vector<Point2>& polygon,
                                 const AABB& window) {
  // edge = {a, b, c}: keep points with a*x + b*y <= c
  const double edges[4][3] = {{-1, 0, -window.x_min},
                              {1, 0, window.x_max},
                              {0, -1, -window.y_min},
                              {0, 1, window.y_max}};
  std::vector<Point2> poly = polygon;
  for (const auto& e : edges) {
    if (poly.empty()) break;
    std::vector<Point2> next;
    next.reserve(poly.size() + 2);
    for (size_t i = 0; i < poly.size(); ++i) {
      const Point2& p = poly[i];
      const Point2& q = poly[(i + 1) % poly.size()];
      const double dp = e[0] * p.x + e[1] * p.y - e[2];
      const double dq = e[0] * q.x + e[1] * q.y - e[2];
      if (dp <= 0.0) next.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
        const double t = dp / (dp - dq);
        next.push_back(Point2{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

void TilingSpec::validate() const {
  if (patch_px <= 0) throw ConfigError("patch_px must be positive");
  if (overlap_px < 0 || overlap_px >= patch_px) {
    throw ConfigError("overlap_px must be in [0, patch_px)");
  }
  if (output_px <= 0 || output_px > patch_px) {
    throw ConfigError("output_px must be in (0, patch_px]");
  }
  if (min_annotation_px < 0.0) {
    throw ConfigError("min_annotation_px must be >= 0");
  }
}

std::vector<int> tile_positions(int extent_px, int patch_px, int overlap_px) {
  if (extent_px < patch_px) {
    throw DataError("extent smaller than patch size");
  }
  if (overlap_px < 0 || overlap_px >= patch_px) {
    throw ConfigError("overlap_px must be in [0, patch_px)");
  }
  const int stride = patch_px - overlap_px;
  const int span = extent_px - patch_px;
  const int k_max = (span + stride - 1) / stride;  // ceil
  std::vector<int> offsets;
  offsets.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    offsets.push_back(std::min(k * stride, span));
  }
  return offsets;
}

std::vector<Patch> tile(const RasterRgb8& image,
                        const std::vector<Annotation>& annotations, double gsd,
                        const TilingSpec& spec) {
  spec.validate();
  const auto xs = tile_positions(image.width(), spec.patch_px, spec.overlap_px);
  const auto ys =
      tile_positions(image.height(), spec.patch_px, spec.overlap_px);

  std::vector<Patch> patches;
  for (size_t row = 0; row < ys.size(); ++row) {
    for (size_t col = 0; col < xs.size(); ++col) {
      const int x0 = xs[col];
      const int y0 = ys[row];
      Patch patch;
      patch.row = static_cast<int>(row);
      patch.col = static_cast<int>(col);
      patch.x0 = x0;
      patch.y0 = y0;
      patch.gsd = gsd;

      const AABB window{0.0, 0.0, static_cast<double>(spec.patch_px),
                        static_cast<double>(spec.patch_px)};
      for (const Annotation& src : annotations) {
        Annotation ann = src;
        ann.obb.center.x -= x0;
        ann.obb.center.y -= y0;
        ann.aabb = aabb_of(ann.obb);

        const auto pts = corners(ann.obb);
        const bool inside = std::all_of(
            pts.begin(), pts.end(),
            [&](const Point2& p) { return window.contains(p); });
        if (!inside) {
          const std::vector<Point2> clipped =
              clip_polygon({pts.begin(), pts.end()}, window);
          if (clipped.size() < 3) continue;
          RotatedRect obb;
          try {
            obb = min_area_rect(clipped);
          } catch (const DataError&) {
            continue;  // clip degenerated to a sliver
          }
          if (std::min(obb.width, obb.height) < spec.min_annotation_px) {
            continue;
          }
          ann.obb = obb;
          ann.aabb = aabb_of(obb);
        }
        patch.annotations.push_back(std::move(ann));
      }

      if (spec.drop_empty && patch.annotations.empty()) continue;

      patch.pixels = RasterRgb8(spec.patch_px, spec.patch_px);
      for (int y = 0; y < spec.patch_px; ++y) {
        for (int x = 0; x < spec.patch_px; ++x) {
          patch.pixels.at(x, y) = image.at(x + x0, y + y0);
        }
      }
      patches.push_back(std::move(patch));
    }
  }
  return patches;
}

Patch resample(Patch patch, int output_px) {
  if (output_px <= 0 || output_px > patch.pixels.width()) {
    throw ConfigError("output_px must be in (0, patch_px]");
  }
  if (output_px == patch.pixels.width() &&
      output_px == patch.pixels.height()) {
    return patch;
  }
  const double s = static_cast<double>(output_px) / patch.pixels.width();
  patch.pixels = downsample_area(patch.pixels, output_px, output_px);
  for (Annotation& ann : patch.annotations) {
    ann.obb.center.x *= s;
    ann.obb.center.y *= s;
    ann.obb.width *= s;
    ann.obb.height *= s;
    ann.aabb = aabb_of(ann.obb);
  }
  patch.gsd /= s;
  return patch;
}

void split(const DatasetManifest& manifest, double val_fraction, uint64_t seed,
           DatasetManifest& train_out, DatasetManifest& val_out) {
  if (val_fraction < 0.0 || val_fraction >= 1.0) {
    throw ConfigError("val_fraction must be in [0, 1)");
  }
  std::vector<size_t> order(manifest.images.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return manifest.images[a].id < manifest.images[b].id;
  });
  RngStream rng(derive_stream_id(seed, kSplitStream));
  for (size_t i = order.size(); i > 1; --i) {
    const size_t j = rng.uniform_int(i);
    std::swap(order[i - 1], order[j]);
  }
  const auto n_val = static_cast<size_t>(
      std::floor(val_fraction * static_cast<double>(order.size()) + 0.5));

  std::vector<uint8_t> in_val(manifest.images.size(), 0);
  for (size_t i = 0; i < n_val; ++i) in_val[order[i]] = 1;

  train_out = DatasetManifest{manifest.version, manifest.tool_version,
                              manifest.config, {}};
  val_out = DatasetManifest{manifest.version, manifest.tool_version,
                            manifest.config, {}};
  std::vector<size_t> by_id(manifest.images.size());
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](size_t a, size_t b) {
    return manifest.images[a].id < manifest.images[b].id;
  });
  for (const size_t i : by_id) {
    ImageRecord rec = manifest.images[i];
    rec.split = in_val[i] ? "val" : "train";
    (in_val[i] ? val_out : train_out).images.push_back(std::move(rec));
  }
}

DatasetManifest subsample(const DatasetManifest& manifest, int64_t n,
                          uint64_t seed) {
  const auto total = static_cast<int64_t>(manifest.images.size());
  if (n < 0 || n > total) {
    throw DataError("subsample: n exceeds the image count");
  }
  std::vector<size_t> order(manifest.images.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return manifest.images[a].id < manifest.images[b].id;
  });
  RngStream rng(derive_stream_id(seed, kSubsampleStream));
  for (int64_t i = 0; i < n; ++i) {
    const int64_t j = i + static_cast<int64_t>(rng.uniform_int(total - i));
    std::swap(order[i], order[j]);
  }
  std::vector<size_t> chosen(order.begin(), order.begin() + n);
  std::sort(chosen.begin(), chosen.end(), [&](size_t a, size_t b) {
    return manifest.images[a].id < manifest.images[b].id;
  });
  DatasetManifest out{manifest.version, manifest.tool_version, manifest.config,
                      {}};
  out.images.reserve(chosen.size());
  for (const size_t i : chosen) out.images.push_back(manifest.images[i]);
  return out;
}

std::string patch_id(const std::string& tile_id, int row, int col) {
  return tile_id + "_" + std::to_string(row) + "_" + std::to_string(col);
}

}  // namespace aerogen
