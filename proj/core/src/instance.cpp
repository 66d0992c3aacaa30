#include "aerogen/instance.hpp"

#include <cmath>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "aerogen/errors.hpp"
#include "aerogen/resample.hpp"

namespace aerogen {

namespace {

using nlohmann::json;

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

std::vector<Rgb8> rgb_list_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be a list of triples");
  std::vector<Rgb8> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rgb_from_json(e, what));
  return out;
}

}  // namespace

void ColorPalette::validate() const {
  if (body_colors.empty() || window_colors.empty()) {
    throw ConfigError("palette: body and window color lists must be non-empty");
  }
}

ColorPalette default_palette() {
  ColorPalette p;
  p.body_colors = {
      {242, 242, 242},  // white
      {25, 25, 25},     // black
      {70, 70, 70},     // dark gray
      {120, 120, 120},  // gray
      {165, 165, 165},  // light gray
      {200, 202, 205},  // silver
      {170, 30, 35},    // red
      {110, 20, 25},    // dark red
      {25, 40, 90},     // dark blue
      {95, 110, 130},   // blue gray
      {40, 90, 55},     // green
      {205, 190, 160},  // beige
  };
  p.window_colors = {
      {60, 75, 95},  {70, 85, 105},  {85, 100, 120},
      {100, 115, 135}, {115, 130, 150}, {130, 145, 165},
  };
  p.light_color = {235, 225, 180};
  p.outline_color_black = {0, 0, 0};
  return p;
}

ColorPalette load_palette(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open " + json_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(json_path.string() + ": " + e.what());
  }
  ColorPalette p = default_palette();
  try {
    if (j.is_array()) {
      p.body_colors = rgb_list_from_json(j, "palette");
    } else if (j.is_object()) {
      if (j.contains("body_colors")) {
        p.body_colors = rgb_list_from_json(j["body_colors"], "body_colors");
      }
      if (j.contains("window_colors")) {
        p.window_colors =
            rgb_list_from_json(j["window_colors"], "window_colors");
      }
      if (j.contains("light_color")) {
        p.light_color = rgb_from_json(j["light_color"], "light_color");
      }
      if (j.contains("outline_color_black")) {
        p.outline_color_black =
            rgb_from_json(j["outline_color_black"], "outline_color_black");
      }
    } else {
      throw ConfigError(json_path.string() + ": expected array or object");
    }
  } catch (const json::exception& e) {
    throw ConfigError(json_path.string() + ": " + e.what());
  }
  p.validate();
  return p;
}

VehicleInstance colorize(const Blueprint& b, const ColorPalette& palette,
                         OutlineMode outline_mode, RngStream& rng) {
  palette.validate();
  const Rgb8 body = palette.body_colors[rng.uniform_int(
      palette.body_colors.size())];
  const Rgb8 window = palette.window_colors[rng.uniform_int(
      palette.window_colors.size())];
  const Rgb8 outline =
      outline_mode == OutlineMode::Black ? palette.outline_color_black : body;

  VehicleInstance inst;
  inst.pixels = RasterRgba8(b.mask.width(), b.mask.height());
  for (int y = 0; y < b.mask.height(); ++y) {
    for (int x = 0; x < b.mask.width(); ++x) {
      Rgb8 c;
      switch (b.mask.at(x, y)) {
        case SurfaceClass::Background:
          continue;  // stays fully transparent
        case SurfaceClass::Outline:
          c = outline;
          break;
        case SurfaceClass::Body:
          c = body;
          break;
        case SurfaceClass::Lights:
          c = palette.light_color;
          break;
        case SurfaceClass::Windows:
          c = window;
          break;
      }
      inst.pixels.at(x, y) = Rgba8{c.r, c.g, c.b, 255};
    }
  }
  inst.footprint_w = inst.pixels.width();
  inst.footprint_h = inst.pixels.height();
  inst.source_id = "blueprint:" + b.id;
  return inst;
}

VehicleInstance cut_partial(VehicleInstance v, RngStream& rng) {
  if (v.is_partial) {
    throw DataError("cut_partial: instance is already partial");
  }
  const bool cut_x = rng.uniform_int(2) == 0;
  const double fraction = rng.uniform(0.5, 0.7);
  const bool keep_leading = rng.uniform_int(2) == 0;

  const int dim = cut_x ? v.pixels.width() : v.pixels.height();
  const int kept = std::max(1, static_cast<int>(std::llround(fraction * dim)));
  const int offset = keep_leading ? 0 : dim - kept;

  RasterRgba8 cropped(cut_x ? kept : v.pixels.width(),
                      cut_x ? v.pixels.height() : kept);
  for (int y = 0; y < cropped.height(); ++y) {
    for (int x = 0; x < cropped.width(); ++x) {
      cropped.at(x, y) =
          cut_x ? v.pixels.at(x + offset, y) : v.pixels.at(x, y + offset);
    }
  }
  v.pixels = std::move(cropped);
  v.footprint_w = v.pixels.width();
  v.footprint_h = v.pixels.height();
  v.is_partial = true;
  v.cut_axis = cut_x ? CutAxis::X : CutAxis::Y;
  v.cut_fraction = fraction;
  return v;
}

VehicleInstance deform(VehicleInstance v, double max_frac, RngStream& rng) {
  if (max_frac < 0.0) {
    throw ConfigError("deform: max_frac must be >= 0");
  }
  const double d_left = rng.uniform(-max_frac, max_frac);
  const double d_right = rng.uniform(-max_frac, max_frac);
  const double d_top = rng.uniform(-max_frac, max_frac);
  const double d_bottom = rng.uniform(-max_frac, max_frac);
  const double sx = 1.0 + d_left + d_right;
  const double sy = 1.0 + d_top + d_bottom;
  const int new_w = static_cast<int>(std::llround(v.pixels.width() * sx));
  const int new_h = static_cast<int>(std::llround(v.pixels.height() * sy));
  if (new_w < 2 || new_h < 2) {
    throw DataError("deform: resulting instance smaller than 2 px");
  }
  if (new_w != v.pixels.width() || new_h != v.pixels.height()) {
    v.pixels = resize_bilinear(v.pixels, new_w, new_h);
  }
  v.footprint_w = new_w;
  v.footprint_h = new_h;
  v.deform_sx = sx;
  v.deform_sy = sy;
  return v;
}

}  // namespace aerogen
