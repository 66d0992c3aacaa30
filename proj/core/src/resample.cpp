#include "aerogen/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace aerogen {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Catmull-Rom weights for fractional offset t in [0, 1).
std::array<double, 4> catmull_rom(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {-0.5 * t3 + t2 - 0.5 * t, 1.5 * t3 - 2.5 * t2 + 1.0,
          -1.5 * t3 + 2.0 * t2 + 0.5 * t, 0.5 * t3 - 0.5 * t2};
}

inline int clamp_idx(int i, int n) { return std::clamp(i, 0, n - 1); }

inline uint8_t to_u8(double v) {
  return static_cast<uint8_t>(std::clamp<long>(std::llround(v), 0, 255));
}

struct Premul {
  double r = 0, g = 0, b = 0, a = 0;
};

inline Premul premul_at(const RasterRgba8& src, int x, int y, bool clamp) {
  if (clamp) {
    x = clamp_idx(x, src.width());
    y = clamp_idx(y, src.height());
  } else if (!src.in_bounds(x, y)) {
    return {};
  }
  const Rgba8& p = src.at(x, y);
  const double a = p.a / 255.0;
  return {p.r * a, p.g * a, p.b * a, a};
}

// Bilinear fetch at continuous raster coordinates (pixel i center at i+0.5).
Premul sample_premul(const RasterRgba8& src, double u, double v, bool clamp) {
  const double gx = u - 0.5;
  const double gy = v - 0.5;
  const int x0 = static_cast<int>(std::floor(gx));
  const int y0 = static_cast<int>(std::floor(gy));
  const double tx = gx - x0;
  const double ty = gy - y0;
  const Premul p00 = premul_at(src, x0, y0, clamp);
  const Premul p10 = premul_at(src, x0 + 1, y0, clamp);
  const Premul p01 = premul_at(src, x0, y0 + 1, clamp);
  const Premul p11 = premul_at(src, x0 + 1, y0 + 1, clamp);
  const double w00 = (1 - tx) * (1 - ty);
  const double w10 = tx * (1 - ty);
  const double w01 = (1 - tx) * ty;
  const double w11 = tx * ty;
  return {p00.r * w00 + p10.r * w10 + p01.r * w01 + p11.r * w11,
          p00.g * w00 + p10.g * w10 + p01.g * w01 + p11.g * w11,
          p00.b * w00 + p10.b * w10 + p01.b * w01 + p11.b * w11,
          p00.a * w00 + p10.a * w10 + p01.a * w01 + p11.a * w11};
}

inline Rgba8 unpremul(const Premul& p) {
  if (p.a <= 0.0) return Rgba8{};
  const double inv = 1.0 / p.a;
  return Rgba8{to_u8(p.r * inv), to_u8(p.g * inv), to_u8(p.b * inv),
               to_u8(p.a * 255.0)};
}

}  // namespace

RasterF32 bicubic_upsample(const RasterF32& grid, int out_w, int out_h) {
  RasterF32 out(out_w, out_h);
  const int gw = grid.width();
  const int gh = grid.height();
  for (int y = 0; y < out_h; ++y) {
    const double sy = (y + 0.5) * gh / out_h - 0.5;
    const int y0 = static_cast<int>(std::floor(sy));
    const auto wy = catmull_rom(sy - y0);
    for (int x = 0; x < out_w; ++x) {
      const double sx = (x + 0.5) * gw / out_w - 0.5;
      const int x0 = static_cast<int>(std::floor(sx));
      const auto wx = catmull_rom(sx - x0);
      double acc = 0.0;
      for (int j = 0; j < 4; ++j) {
        const int yy = clamp_idx(y0 - 1 + j, gh);
        double row = 0.0;
        for (int i = 0; i < 4; ++i) {
          row += wx[i] * grid.at(clamp_idx(x0 - 1 + i, gw), yy);
        }
        acc += wy[j] * row;
      }
      out.at(x, y) = static_cast<float>(acc);
    }
  }
  return out;
}

RasterRgba8 resize_bilinear(const RasterRgba8& src, int out_w, int out_h) {
  RasterRgba8 out(out_w, out_h);
  const double rx = static_cast<double>(src.width()) / out_w;
  const double ry = static_cast<double>(src.height()) / out_h;
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      out.at(x, y) =
          unpremul(sample_premul(src, (x + 0.5) * rx, (y + 0.5) * ry, true));
    }
  }
  return out;
}

RasterRgb8 downsample_area(const RasterRgb8& src, int out_w, int out_h) {
  RasterRgb8 out(out_w, out_h);
  const double rx = static_cast<double>(src.width()) / out_w;
  const double ry = static_cast<double>(src.height()) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double sy0 = y * ry;
    const double sy1 = (y + 1) * ry;
    const int iy0 = static_cast<int>(std::floor(sy0));
    const int iy1 = std::min(src.height(),
                             static_cast<int>(std::ceil(sy1 - 1e-12)));
    for (int x = 0; x < out_w; ++x) {
      const double sx0 = x * rx;
      const double sx1 = (x + 1) * rx;
      const int ix0 = static_cast<int>(std::floor(sx0));
      const int ix1 = std::min(src.width(),
                               static_cast<int>(std::ceil(sx1 - 1e-12)));
      double r = 0, g = 0, b = 0, wsum = 0;
      for (int sy = iy0; sy < iy1; ++sy) {
        const double hy =
            std::min<double>(sy + 1, sy1) - std::max<double>(sy, sy0);
        for (int sx = ix0; sx < ix1; ++sx) {
          const double hx =
              std::min<double>(sx + 1, sx1) - std::max<double>(sx, sx0);
          const double w = hx * hy;
          const Rgb8& p = src.at(sx, sy);
          r += w * p.r;
          g += w * p.g;
          b += w * p.b;
          wsum += w;
        }
      }
      out.at(x, y) = Rgb8{to_u8(r / wsum), to_u8(g / wsum), to_u8(b / wsum)};
    }
  }
  return out;
}

RasterU8 resample_mode(const RasterU8& src, int out_w, int out_h) {
  RasterU8 out(out_w, out_h);
  const double rx = static_cast<double>(src.width()) / out_w;
  const double ry = static_cast<double>(src.height()) / out_h;
  std::array<double, 256> votes{};
  for (int y = 0; y < out_h; ++y) {
    const double sy0 = y * ry;
    const double sy1 = (y + 1) * ry;
    const int iy0 = static_cast<int>(std::floor(sy0));
    const int iy1 = std::min(src.height(),
                             static_cast<int>(std::ceil(sy1 - 1e-12)));
    for (int x = 0; x < out_w; ++x) {
      const double sx0 = x * rx;
      const double sx1 = (x + 1) * rx;
      const int ix0 = static_cast<int>(std::floor(sx0));
      const int ix1 = std::min(src.width(),
                               static_cast<int>(std::ceil(sx1 - 1e-12)));
      votes.fill(0.0);
      for (int sy = iy0; sy < iy1; ++sy) {
        const double hy =
            std::min<double>(sy + 1, sy1) - std::max<double>(sy, sy0);
        for (int sx = ix0; sx < ix1; ++sx) {
          const double hx =
              std::min<double>(sx + 1, sx1) - std::max<double>(sx, sx0);
          votes[src.at(sx, sy)] += hx * hy;
        }
      }
      int winner = 0;
      double best = -1.0;
      for (int v = 0; v < 256; ++v) {
        if (votes[v] > best) {
          best = votes[v];
          winner = v;
        }
      }
      out.at(x, y) = static_cast<uint8_t>(winner);
    }
  }
  return out;
}

RasterDims rotated_raster_dims(int w, int h, double angle_deg) {
  const double rad = angle_deg * (kPi / 180.0);
  const double c = std::abs(std::cos(rad));
  const double s = std::abs(std::sin(rad));
  const double ex = w * c + h * s;
  const double ey = w * s + h * c;
  return {static_cast<int>(std::ceil(ex - 1e-9)) + 2,
          static_cast<int>(std::ceil(ey - 1e-9)) + 2};
}

RasterRgba8 rotate_bilinear(const RasterRgba8& src, double angle_deg) {
  const auto [ow, oh] = rotated_raster_dims(src.width(), src.height(),
                                            angle_deg);
  RasterRgba8 out(ow, oh);
  const double rad = angle_deg * (kPi / 180.0);
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double ocx = ow * 0.5;
  const double ocy = oh * 0.5;
  const double scx = src.width() * 0.5;
  const double scy = src.height() * 0.5;
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      const double dx = (x + 0.5) - ocx;
      const double dy = (y + 0.5) - ocy;
      // inverse rotation back into the source frame
      const double u = dx * c + dy * s + scx;
      const double v = -dx * s + dy * c + scy;
      out.at(x, y) = unpremul(sample_premul(src, u, v, false));
    }
  }
  return out;
}

}  // namespace aerogen
