#include <doctest.h>

#include <fstream>

#include "aerogen/blueprint.hpp"
#include "aerogen/errors.hpp"
#include "aerogen/png_io.hpp"
#include "fixtures.hpp"

using namespace aerogen;

namespace {

RasterRgb8 paint_mask(const Raster<SurfaceClass>& mask, const ColorKey& key) {
  RasterRgb8 img(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      img.at(x, y) = key.colors[static_cast<int>(mask.at(x, y))];
    }
  }
  return img;
}

void write_meta(const std::filesystem::path& path, const std::string& id,
                double length_m, double width_m) {
  std::ofstream out(path);
  out << "{\n"
      << "  \"id\": \"" << id << "\",\n"
      << "  \"vehicle_label\": \"" << id << "\",\n"
      << "  \"physical_length_m\": " << length_m << ",\n"
      << "  \"physical_width_m\": " << width_m << "\n"
      << "}\n";
}

}  // namespace

TEST_SUITE("blueprint") {

TEST_CASE("load assigns classes by key color") {
  const auto dir = fixtures::scratch_dir("bp_load");
  const Blueprint fixture = fixtures::block_blueprint(0.05);
  const ColorKey key = default_color_key();
  write_png(dir / "block.png", paint_mask(fixture.mask, key));
  write_meta(dir / "block.json", "block", 40 * 0.05, 20 * 0.05);

  const Blueprint loaded = load_blueprint(dir / "block.png");
  const auto hist = class_histogram(loaded);
  CHECK(hist[static_cast<int>(SurfaceClass::Body)] == 420);      // 30 x 14
  CHECK(hist[static_cast<int>(SurfaceClass::Outline)] == 92);    // 32x16 ring
  CHECK(hist[static_cast<int>(SurfaceClass::Background)] == 288);
  CHECK(hist[static_cast<int>(SurfaceClass::Lights)] == 0);
  CHECK(hist[static_cast<int>(SurfaceClass::Windows)] == 0);
  CHECK(loaded.pixel_pitch == doctest::Approx(0.05));
  CHECK(loaded.mask == fixture.mask);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load tolerates small color jitter") {
  const auto dir = fixtures::scratch_dir("bp_jitter");
  const Blueprint fixture = fixtures::block_blueprint(0.05);
  RasterRgb8 img = paint_mask(fixture.mask, default_color_key());
  img.at(10, 10) = Rgb8{250, 8, 6};  // still nearest to body red, within 10
  write_png(dir / "b.png", img);
  write_meta(dir / "b.json", "b", 2.0, 1.0);
  const Blueprint loaded = load_blueprint(dir / "b.png");
  CHECK(loaded.mask.at(10, 10) == SurfaceClass::Body);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load rejects masks with more than 0.5% off-key pixels") {
  const auto dir = fixtures::scratch_dir("bp_malformed");
  const Blueprint fixture = fixtures::block_blueprint(0.05);
  RasterRgb8 img = paint_mask(fixture.mask, default_color_key());
  // 800 pixels total: 4 off-key pixels are exactly 0.5% (allowed),
  // 8 (1%) must fail
  const Rgb8 off{128, 64, 32};
  img.at(0, 0) = off;
  img.at(1, 0) = off;
  img.at(2, 0) = off;
  img.at(3, 0) = off;
  write_png(dir / "ok.png", img);
  write_meta(dir / "ok.json", "ok", 2.0, 1.0);
  CHECK_NOTHROW(load_blueprint(dir / "ok.png"));

  img.at(4, 0) = off;
  img.at(5, 0) = off;
  img.at(6, 0) = off;
  img.at(7, 0) = off;
  write_png(dir / "bad.png", img);
  write_meta(dir / "bad.json", "bad", 2.0, 1.0);
  CHECK_THROWS_AS(load_blueprint(dir / "bad.png"), DataError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load rejects masks without body pixels") {
  const auto dir = fixtures::scratch_dir("bp_empty");
  RasterRgb8 img(10, 5, default_color_key().colors[0]);  // all background
  write_png(dir / "e.png", img);
  write_meta(dir / "e.json", "e", 0.5, 0.25);
  CHECK_THROWS_AS(load_blueprint(dir / "e.png"), DataError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("make_blueprint validates dimension consistency") {
  Raster<SurfaceClass> mask(40, 20, SurfaceClass::Body);
  // width 20 px at pitch 0.05 means 1.0 m; claiming 1.4 m is off by 8 px
  CHECK_THROWS_AS(make_blueprint("x", "x", mask, 2.0, 1.4), DataError);
  CHECK_NOTHROW(make_blueprint("x", "x", mask, 2.0, 1.0));
  CHECK_THROWS_AS(make_blueprint("x", "x", mask, -2.0, 1.0), DataError);
}

TEST_CASE("simplify with threshold 0 is the identity") {
  const Blueprint b = fixtures::car_blueprint();
  const Blueprint s = simplify(b, 0);
  CHECK(s.mask == b.mask);
}

TEST_CASE("simplify absorbs a small speck into the surrounding class") {
  Blueprint b = fixtures::solid_blueprint(20, 10);
  b.mask.at(5, 5) = SurfaceClass::Lights;
  b.mask.at(6, 5) = SurfaceClass::Lights;
  const Blueprint s = simplify(b, 4);
  CHECK(s.mask.at(5, 5) == SurfaceClass::Body);
  CHECK(s.mask.at(6, 5) == SurfaceClass::Body);
}

TEST_CASE("simplify absorbs exactly the regions below the threshold") {
  Blueprint b = fixtures::solid_blueprint(30, 12);
  // area 2
  b.mask.at(2, 2) = SurfaceClass::Lights;
  b.mask.at(3, 2) = SurfaceClass::Lights;
  // area 3
  b.mask.at(10, 4) = SurfaceClass::Windows;
  b.mask.at(11, 4) = SurfaceClass::Windows;
  b.mask.at(12, 4) = SurfaceClass::Windows;
  // area 9 (3x3)
  for (int y = 6; y < 9; ++y) {
    for (int x = 20; x < 23; ++x) b.mask.at(x, y) = SurfaceClass::Windows;
  }
  const Blueprint s = simplify(b, 5);
  CHECK(s.mask.at(2, 2) == SurfaceClass::Body);
  CHECK(s.mask.at(10, 4) == SurfaceClass::Body);
  CHECK(s.mask.at(21, 7) == SurfaceClass::Windows);  // area 9 survives
}

TEST_CASE("simplify is idempotent") {
  Blueprint b = fixtures::car_blueprint(60, 26);
  b.mask.at(8, 8) = SurfaceClass::Lights;
  for (const int k : {0, 3, 6, 12}) {
    const Blueprint once = simplify(b, k);
    const Blueprint twice = simplify(once, k);
    CHECK(once.mask == twice.mask);
  }
}

TEST_CASE("rescale arithmetic") {
  // 90x40 at 0.05 m/px -> physical 4.5 x 2.0 m
  const Blueprint b = fixtures::solid_blueprint(90, 40, 0.05);
  CHECK(b.physical_length == doctest::Approx(4.5));

  const Blueprint same = rescale(b, 0.05);
  CHECK(same.mask.width() == 90);
  CHECK(same.mask.height() == 40);

  const Blueprint coarse = rescale(b, 0.10);
  CHECK(coarse.mask.width() == 45);
  CHECK(coarse.mask.height() == 20);
  CHECK(coarse.pixel_pitch == doctest::Approx(0.10));
  CHECK(coarse.physical_length == doctest::Approx(4.5));

  // native Potsdam pitch: 4.5 m at 0.05 m/px is 90 px
  const Blueprint native = rescale(coarse, 0.05);
  CHECK(native.mask.width() == 90);

  CHECK_THROWS_AS(rescale(b, 3.0), DataError);  // too coarse
}

TEST_CASE("rescale is dimension-idempotent") {
  const Blueprint b = fixtures::car_blueprint(91, 38, 0.041);
  const Blueprint once = rescale(b, 0.097);
  const Blueprint twice = rescale(once, 0.097);
  CHECK(once.mask == twice.mask);
  CHECK(once.pixel_pitch == twice.pixel_pitch);
}

TEST_CASE("pipeline keeps the body fraction within 2 percentage points") {
  const Blueprint b = fixtures::car_blueprint(120, 52, 0.025);
  const auto fraction = [](const Blueprint& bp) {
    const auto hist = class_histogram(bp);
    return static_cast<double>(hist[static_cast<int>(SurfaceClass::Body)]) /
           static_cast<double>(bp.mask.pixel_count());
  };
  const Blueprint out = rescale(simplify(b, 4), 0.05);
  CHECK(std::abs(fraction(out) - fraction(b)) < 0.02);
}

TEST_CASE("load_blueprint_set loads sorted by id and validates") {
  const auto dir = fixtures::scratch_dir("bp_set");
  const ColorKey key = default_color_key();
  for (const char* id : {"zeta", "alpha"}) {
    const Blueprint b = fixtures::block_blueprint(0.05);
    write_png(dir / (std::string(id) + ".png"), paint_mask(b.mask, key));
    write_meta(dir / (std::string(id) + ".json"), id, 2.0, 1.0);
  }
  const auto set = load_blueprint_set(dir);
  REQUIRE(set.size() == 2);
  CHECK(set[0].id == "alpha");
  CHECK(set[1].id == "zeta");
  CHECK_THROWS_AS(load_blueprint_set(dir / "missing"), IoError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
