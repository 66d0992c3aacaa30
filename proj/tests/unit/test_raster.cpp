#include <doctest.h>

#include <cmath>
#include <fstream>

#include "aerogen/png_io.hpp"
#include "aerogen/raster.hpp"
#include "aerogen/resample.hpp"
#include "aerogen/rng.hpp"
#include "fixtures.hpp"

using namespace aerogen;

TEST_SUITE("raster") {

TEST_CASE("png round trip preserves pixels") {
  const auto dir = fixtures::scratch_dir("png");
  RngStream rng(7);
  RasterRgb8 rgb(33, 17);
  for (auto& px : rgb) {
    px = Rgb8{static_cast<uint8_t>(rng.uniform_int(256)),
              static_cast<uint8_t>(rng.uniform_int(256)),
              static_cast<uint8_t>(rng.uniform_int(256))};
  }
  write_png(dir / "rgb.png", rgb);
  CHECK(read_png_rgb8(dir / "rgb.png") == rgb);

  RasterU8 gray(9, 21);
  for (auto& px : gray) px = static_cast<uint8_t>(rng.uniform_int(256));
  write_png(dir / "gray.png", gray);
  CHECK(read_png_gray8(dir / "gray.png") == gray);

  RasterRgba8 rgba(12, 12);
  for (auto& px : rgba) {
    px = Rgba8{static_cast<uint8_t>(rng.uniform_int(256)),
               static_cast<uint8_t>(rng.uniform_int(256)),
               static_cast<uint8_t>(rng.uniform_int(256)),
               static_cast<uint8_t>(rng.uniform_int(256))};
  }
  write_png(dir / "rgba.png", rgba);
  CHECK(read_png_rgba8(dir / "rgba.png") == rgba);
  std::filesystem::remove_all(dir);
}

TEST_CASE("png writes are byte-deterministic") {
  const auto dir = fixtures::scratch_dir("png_det");
  RasterRgb8 img(64, 64, Rgb8{10, 200, 30});
  img.at(5, 9) = Rgb8{1, 2, 3};
  write_png(dir / "a.png", img);
  write_png(dir / "b.png", img);
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(dir / "a.png") == slurp(dir / "b.png"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("composite_over blends and clips") {
  RasterRgb8 dst(4, 4, Rgb8{0, 0, 0});
  RasterRgba8 src(2, 2, Rgba8{255, 255, 255, 255});
  src.at(0, 0) = Rgba8{100, 100, 100, 0};    // transparent
  src.at(1, 0) = Rgba8{200, 100, 0, 255};    // opaque
  src.at(0, 1) = Rgba8{255, 255, 255, 128};  // half

  composite_over(dst, src, 0, 0);
  CHECK(dst.at(0, 0) == Rgb8{0, 0, 0});
  CHECK(dst.at(1, 0) == Rgb8{200, 100, 0});
  CHECK(dst.at(0, 1) == Rgb8{128, 128, 128});  // (255*128 + 127)/255

  // pasting partially outside must not crash or wrap
  composite_over(dst, src, 3, 3);
  CHECK(dst.at(3, 3) == Rgb8{0, 0, 0});  // transparent corner landed there
  composite_over(dst, src, -1, -1);
  CHECK(dst.at(0, 0) == Rgb8{255, 255, 255});
}

TEST_CASE("bicubic upsample reproduces constants and is smooth") {
  RasterF32 grid(10, 10, 3.25f);
  const RasterF32 up = bicubic_upsample(grid, 100, 100);
  for (const float v : up) CHECK(v == doctest::Approx(3.25).epsilon(1e-6));

  // interpolation through varying data stays within a sane range
  RngStream rng(5);
  for (auto& v : grid) v = static_cast<float>(rng.uniform(-10, 10));
  const RasterF32 up2 = bicubic_upsample(grid, 60, 60);
  for (const float v : up2) {
    CHECK(v < 15.0f);
    CHECK(v > -15.0f);
  }
  // neighboring output samples change slowly (6 px per grid cell)
  for (int y = 0; y < 60; ++y) {
    for (int x = 1; x < 60; ++x) {
      CHECK(std::abs(up2.at(x, y) - up2.at(x - 1, y)) < 12.0);
    }
  }
}

TEST_CASE("area downsample averages exactly for integer ratios") {
  RasterRgb8 src(4, 2);
  // left 2x2 block: values 10, 20, 30, 40 -> mean 25
  src.at(0, 0) = Rgb8{10, 10, 10};
  src.at(1, 0) = Rgb8{20, 20, 20};
  src.at(0, 1) = Rgb8{30, 30, 30};
  src.at(1, 1) = Rgb8{40, 40, 40};
  // right block: constant 200
  for (int y = 0; y < 2; ++y) {
    for (int x = 2; x < 4; ++x) src.at(x, y) = Rgb8{200, 200, 200};
  }
  const RasterRgb8 out = downsample_area(src, 2, 1);
  CHECK(out.at(0, 0) == Rgb8{25, 25, 25});
  CHECK(out.at(1, 0) == Rgb8{200, 200, 200});
}

TEST_CASE("mode resample keeps majority classes") {
  RasterU8 src(4, 4, 0);
  // a 3x3 block of twos in the top-left quadrant's footprint
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) src.at(x, y) = 2;
  }
  const RasterU8 half = resample_mode(src, 2, 2);
  CHECK(half.at(0, 0) == 2);  // 4 of 4 source pixels
  CHECK(half.at(1, 0) == 0);  // 2 vs 2 tie, smaller value wins
  CHECK(half.at(1, 1) == 0);  // 1 of 4
}

TEST_CASE("mode resample breaks ties toward the smaller value") {
  RasterU8 src(2, 1);
  src.at(0, 0) = 7;
  src.at(1, 0) = 3;
  const RasterU8 out = resample_mode(src, 1, 1);
  CHECK(out.at(0, 0) == 3);
}

TEST_CASE("rotation by 0 degrees preserves content inside the margin") {
  RasterRgba8 src(5, 3);
  RngStream rng(9);
  for (auto& px : src) {
    px = Rgba8{static_cast<uint8_t>(rng.uniform_int(256)),
               static_cast<uint8_t>(rng.uniform_int(256)),
               static_cast<uint8_t>(rng.uniform_int(256)), 255};
  }
  const RasterRgba8 out = rotate_bilinear(src, 0.0);
  CHECK(out.width() == 7);
  CHECK(out.height() == 5);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 5; ++x) {
      CHECK(out.at(x + 1, y + 1) == src.at(x, y));
    }
  }
  // margin ring is fully transparent
  for (int x = 0; x < 7; ++x) {
    CHECK(out.at(x, 0).a == 0);
    CHECK(out.at(x, 4).a == 0);
  }
}

TEST_CASE("rotation keeps alpha support within the rotated footprint") {
  RasterRgba8 src(20, 8, Rgba8{90, 120, 200, 255});
  const double angle = 33.0;
  const RasterRgba8 out = rotate_bilinear(src, angle);
  const auto rect = make_rotated_rect(
      {out.width() / 2.0, out.height() / 2.0}, 20, 8, angle);
  const auto grown = dilated(rect, 1.0);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (out.at(x, y).a > 0) {
        CHECK(point_in_rect(grown, Point2{x + 0.5, y + 0.5}));
      }
    }
  }
}

}  // TEST_SUITE
