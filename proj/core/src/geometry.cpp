#include "aerogen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aerogen/errors.hpp"

namespace aerogen {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

void project_onto(const std::array<Point2, 4>& pts, double ax, double ay,
                  double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Point2& p : pts) {
    const double s = p.x * ax + p.y * ay;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
}

}  // namespace

double normalize_angle_deg(double deg) {
  double a = std::fmod(deg, 180.0);
  if (a < 0.0) a += 180.0;
  if (a >= 180.0) a = 0.0;  // fmod can round back up to 180
  return a;
}

RotatedRect make_rotated_rect(Point2 center, double width, double height,
                              double angle_deg) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw DataError("rotated rect requires positive width and height");
  }
  if (!std::isfinite(center.x) || !std::isfinite(center.y) ||
      !std::isfinite(angle_deg)) {
    throw DataError("rotated rect requires finite values");
  }
  return RotatedRect{center, width, height, normalize_angle_deg(angle_deg)};
}

std::array<Point2, 4> corners(const RotatedRect& r) {
  const double c = std::cos(deg_to_rad(r.angle_deg));
  const double s = std::sin(deg_to_rad(r.angle_deg));
  const double hw = r.width * 0.5;
  const double hh = r.height * 0.5;
  const std::array<Point2, 4> local{
      Point2{-hw, -hh}, Point2{hw, -hh}, Point2{hw, hh}, Point2{-hw, hh}};
  std::array<Point2, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = Point2{r.center.x + local[i].x * c - local[i].y * s,
                    r.center.y + local[i].x * s + local[i].y * c};
  }
  return out;
}

AABB aabb_of(const RotatedRect& r) {
  const auto pts = corners(r);
  AABB box{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Point2& p : pts) {
    box.x_min = std::min(box.x_min, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.x_max = std::max(box.x_max, p.x);
    box.y_max = std::max(box.y_max, p.y);
  }
  return box;
}

bool point_in_rect(const RotatedRect& r, const Point2& p) {
  const double c = std::cos(deg_to_rad(r.angle_deg));
  const double s = std::sin(deg_to_rad(r.angle_deg));
  const double dx = p.x - r.center.x;
  const double dy = p.y - r.center.y;
  const double u = dx * c + dy * s;    // along width axis
  const double v = -dx * s + dy * c;   // along height axis
  return std::abs(u) <= r.width * 0.5 && std::abs(v) <= r.height * 0.5;
}

RotatedRect dilated(const RotatedRect& r, double margin) {
  return RotatedRect{r.center, r.width + 2.0 * margin, r.height + 2.0 * margin,
                     r.angle_deg};
}

bool rects_intersect(const RotatedRect& a, const RotatedRect& b) {
  const auto pa = corners(a);
  const auto pb = corners(b);
  // Two distinct edge normals per rectangle.
  const std::array<std::array<double, 2>, 4> axes = [&] {
    std::array<std::array<double, 2>, 4> out;
    const double ca = std::cos(deg_to_rad(a.angle_deg));
    const double sa = std::sin(deg_to_rad(a.angle_deg));
    const double cb = std::cos(deg_to_rad(b.angle_deg));
    const double sb = std::sin(deg_to_rad(b.angle_deg));
    out[0] = {ca, sa};
    out[1] = {-sa, ca};
    out[2] = {cb, sb};
    out[3] = {-sb, cb};
    return out;
  }();
  for (const auto& ax : axes) {
    double lo_a, hi_a, lo_b, hi_b;
    project_onto(pa, ax[0], ax[1], lo_a, hi_a);
    project_onto(pb, ax[0], ax[1], lo_b, hi_b);
    if (lo_a > hi_b || lo_b > hi_a) return false;  // strict gap separates
  }
  return true;
}

double iou_aabb(const AABB& a, const AABB& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;

  std::vector<Point2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point equals the first
  return hull;
}

RotatedRect min_area_rect(std::span<const Point2> points) {
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DataError("min_area_rect: non-finite input point");
    }
  }
  const std::vector<Point2> hull = convex_hull(points);
  if (hull.size() < 3) {
    throw DataError(
        "min_area_rect: degenerate geometry (needs >= 3 non-collinear "
        "points)");
  }

  double best_area = std::numeric_limits<double>::infinity();
  RotatedRect best{};
  bool found = false;
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point2& p0 = hull[i];
    const Point2& p1 = hull[(i + 1) % hull.size()];
    const double ex = p1.x - p0.x;
    const double ey = p1.y - p0.y;
    const double len = std::hypot(ex, ey);
    if (len == 0.0) continue;
    const double ux = ex / len, uy = ey / len;   // along the edge
    const double vx = -uy, vy = ux;              // edge normal
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Point2& p : hull) {
      const double su = p.x * ux + p.y * uy;
      const double sv = p.x * vx + p.y * vy;
      lo_u = std::min(lo_u, su);
      hi_u = std::max(hi_u, su);
      lo_v = std::min(lo_v, sv);
      hi_v = std::max(hi_v, sv);
    }
    const double w = hi_u - lo_u;
    const double h = hi_v - lo_v;
    if (w <= 0.0 || h <= 0.0) continue;
    const double area = w * h;
    const double mu = (lo_u + hi_u) * 0.5;
    const double mv = (lo_v + hi_v) * 0.5;
    const RotatedRect cand{Point2{mu * ux + mv * vx, mu * uy + mv * vy}, w, h,
                           normalize_angle_deg(rad_to_deg(std::atan2(uy, ux)))};
    if (!found) {
      best = cand;
      best_area = area;
      found = true;
      continue;
    }
    const bool tie = std::abs(area - best_area) <= best_area * 1e-9;
    if (tie) {
      if (cand.angle_deg < best.angle_deg) best = cand;
    } else if (area < best_area) {
      best = cand;
      best_area = area;
    }
  }
  if (!found) {
    throw DataError("min_area_rect: degenerate geometry");
  }
  return best;
}

}  // namespace aerogen
