#pragma once

#include <filesystem>
#include <string>

#include "aerogen/blueprint.hpp"
#include "aerogen/geometry.hpp"
#include "aerogen/raster.hpp"
#include "aerogen/rng.hpp"

namespace aerogen::fixtures {

// 40x20 mask: 30x14 Body block behind a 1-px Outline ring (outer 32x16),
// rest Background. Physical dims chosen so pixel_pitch is exact.
Blueprint block_blueprint(double pixel_pitch = 0.05);

// Solid Body rectangle blueprint of the given raster size.
Blueprint solid_blueprint(int w, int h, double pixel_pitch = 0.05,
                          const std::string& id = "solid");

// Small drawn car-like blueprint (body, outline ring, window band, lights)
// for pipeline tests that need several classes.
Blueprint car_blueprint(int length_px = 90, int width_px = 40,
                        double pixel_pitch = 0.05,
                        const std::string& id = "car");

// Fills every pixel whose center lies in rect (closed test).
void rasterize_rect(RasterRgb8& raster, const RotatedRect& rect, Rgb8 color);

// Fresh scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

// Uniform random rotated rect with center inside [margin, extent - margin].
RotatedRect random_rect(RngStream& rng, double extent, double min_side,
                        double max_side, double margin);

}  // namespace aerogen::fixtures
