#include "aerogen/raster.hpp"

#include <algorithm>

namespace aerogen {

void composite_over(RasterRgb8& dst, const RasterRgba8& src, int x0, int y0) {
  const int sx0 = std::max(0, -x0);
  const int sy0 = std::max(0, -y0);
  const int sx1 = std::min(src.width(), dst.width() - x0);
  const int sy1 = std::min(src.height(), dst.height() - y0);
  for (int sy = sy0; sy < sy1; ++sy) {
    const Rgba8* srow = src.row(sy);
    Rgb8* drow = dst.row(sy + y0);
    for (int sx = sx0; sx < sx1; ++sx) {
      const Rgba8& s = srow[sx];
      if (s.a == 0) continue;
      Rgb8& d = drow[sx + x0];
      if (s.a == 255) {
        d = Rgb8{s.r, s.g, s.b};
        continue;
      }
      const int a = s.a;
      const int ia = 255 - a;
      d.r = static_cast<uint8_t>((s.r * a + d.r * ia + 127) / 255);
      d.g = static_cast<uint8_t>((s.g * a + d.g * ia + 127) / 255);
      d.b = static_cast<uint8_t>((s.b * a + d.b * ia + 127) / 255);
    }
  }
}

}  // namespace aerogen
