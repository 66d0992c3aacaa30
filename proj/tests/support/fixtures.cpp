#include "fixtures.hpp"

#include <atomic>
#include <cmath>

namespace aerogen::fixtures {

Blueprint block_blueprint(double pixel_pitch) {
  Raster<SurfaceClass> mask(40, 20, SurfaceClass::Background);
  for (int y = 2; y < 18; ++y) {
    for (int x = 4; x < 36; ++x) {
      const bool ring = x == 4 || x == 35 || y == 2 || y == 17;
      mask.at(x, y) = ring ? SurfaceClass::Outline : SurfaceClass::Body;
    }
  }
  return make_blueprint("block", "block", std::move(mask), 40 * pixel_pitch,
                        20 * pixel_pitch);
}

Blueprint solid_blueprint(int w, int h, double pixel_pitch,
                          const std::string& id) {
  Raster<SurfaceClass> mask(w, h, SurfaceClass::Body);
  const int len = std::max(w, h);
  const int wid = std::min(w, h);
  return make_blueprint(id, id, std::move(mask), len * pixel_pitch,
                        wid * pixel_pitch);
}

Blueprint car_blueprint(int length_px, int width_px, double pixel_pitch,
                        const std::string& id) {
  Raster<SurfaceClass> mask(length_px, width_px, SurfaceClass::Background);
  const double cx = length_px / 2.0;
  const double cy = width_px / 2.0;
  const double hl = length_px / 2.0;
  const double hw = width_px / 2.0;
  const auto super = [&](double x, double y, double shrink) {
    const double u = (x - cx) / (hl - shrink);
    const double v = (y - cy) / (hw - shrink);
    return std::pow(std::abs(u), 3.5) + std::pow(std::abs(v), 3.5);
  };
  for (int y = 0; y < width_px; ++y) {
    for (int x = 0; x < length_px; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      if (super(px, py, 0.0) > 1.0) continue;
      mask.at(x, y) = super(px, py, 1.5) > 1.0 ? SurfaceClass::Outline
                                               : SurfaceClass::Body;
    }
  }
  // window band forward of the center
  const int wx0 = static_cast<int>(length_px * 0.60);
  const int wx1 = static_cast<int>(length_px * 0.72);
  for (int y = static_cast<int>(width_px * 0.2);
       y < static_cast<int>(width_px * 0.8); ++y) {
    for (int x = wx0; x < wx1; ++x) {
      if (mask.at(x, y) == SurfaceClass::Body) {
        mask.at(x, y) = SurfaceClass::Windows;
      }
    }
  }
  // light pairs near both ends
  for (const double fx : {0.06, 0.94}) {
    for (const double fy : {0.25, 0.75}) {
      const int lx = static_cast<int>(length_px * fx);
      const int ly = static_cast<int>(width_px * fy);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int x = lx + dx;
          const int y = ly + dy;
          if (mask.in_bounds(x, y) && mask.at(x, y) == SurfaceClass::Body) {
            mask.at(x, y) = SurfaceClass::Lights;
          }
        }
      }
    }
  }
  return make_blueprint(id, id, std::move(mask), length_px * pixel_pitch,
                        width_px * pixel_pitch);
}

void rasterize_rect(RasterRgb8& raster, const RotatedRect& rect, Rgb8 color) {
  const AABB box = aabb_of(rect);
  const int x0 = std::max(0, static_cast<int>(std::floor(box.x_min)));
  const int y0 = std::max(0, static_cast<int>(std::floor(box.y_min)));
  const int x1 = std::min(raster.width() - 1,
                          static_cast<int>(std::ceil(box.x_max)));
  const int y1 = std::min(raster.height() - 1,
                          static_cast<int>(std::ceil(box.y_max)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (point_in_rect(rect, Point2{x + 0.5, y + 0.5})) {
        raster.at(x, y) = color;
      }
    }
  }
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("aerogen_test_" + tag + "_" +
                    std::to_string(counter.fetch_add(1)));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

RotatedRect random_rect(RngStream& rng, double extent, double min_side,
                        double max_side, double margin) {
  const double w = rng.uniform(min_side, max_side);
  const double h = rng.uniform(min_side, max_side);
  const double x = rng.uniform(margin, extent - margin);
  const double y = rng.uniform(margin, extent - margin);
  const double angle = rng.uniform(0.0, 180.0);
  return make_rotated_rect(Point2{x, y}, w, h, angle);
}

}  // namespace aerogen::fixtures
