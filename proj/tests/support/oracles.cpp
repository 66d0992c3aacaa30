#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aerogen::oracles {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool point_in_rect_by_frame(const RotatedRect& r, double px, double py) {
  const double rad = r.angle_deg * (kPi / 180.0);
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double dx = px - r.center.x;
  const double dy = py - r.center.y;
  const double u = dx * c + dy * s;
  const double v = -dx * s + dy * c;
  return std::abs(u) <= r.width * 0.5 && std::abs(v) <= r.height * 0.5;
}

double overlap_1d(double lo_a, double hi_a, double lo_b, double hi_b) {
  return std::min(hi_a, hi_b) - std::max(lo_a, lo_b);
}

}  // namespace

bool rects_intersect_sampled(const RotatedRect& a, const RotatedRect& b,
                             double step) {
  const AABB box_a = aabb_of(a);
  const AABB box_b = aabb_of(b);
  const double x0 = std::max(box_a.x_min, box_b.x_min) - step;
  const double x1 = std::min(box_a.x_max, box_b.x_max) + step;
  const double y0 = std::max(box_a.y_min, box_b.y_min) - step;
  const double y1 = std::min(box_a.y_max, box_b.y_max) + step;
  if (x0 > x1 || y0 > y1) return false;
  for (double y = y0; y <= y1; y += step) {
    for (double x = x0; x <= x1; x += step) {
      if (point_in_rect_by_frame(a, x, y) &&
          point_in_rect_by_frame(b, x, y)) {
        return true;
      }
    }
  }
  return false;
}

double penetration_depth(const RotatedRect& a, const RotatedRect& b) {
  const auto pa = corners(a);
  const auto pb = corners(b);
  double depth = std::numeric_limits<double>::infinity();
  const double angles[4] = {a.angle_deg, a.angle_deg + 90.0, b.angle_deg,
                            b.angle_deg + 90.0};
  for (const double deg : angles) {
    const double rad = deg * (kPi / 180.0);
    const double ax = std::cos(rad);
    const double ay = std::sin(rad);
    double lo_a = std::numeric_limits<double>::infinity(), hi_a = -lo_a;
    double lo_b = lo_a, hi_b = -lo_a;
    for (const Point2& p : pa) {
      const double s = p.x * ax + p.y * ay;
      lo_a = std::min(lo_a, s);
      hi_a = std::max(hi_a, s);
    }
    for (const Point2& p : pb) {
      const double s = p.x * ax + p.y * ay;
      lo_b = std::min(lo_b, s);
      hi_b = std::max(hi_b, s);
    }
    depth = std::min(depth, overlap_1d(lo_a, hi_a, lo_b, hi_b));
  }
  return depth;
}

double min_area_sweep(std::span<const Point2> points, double step_deg) {
  double best = std::numeric_limits<double>::infinity();
  for (double deg = 0.0; deg < 90.0; deg += step_deg) {
    const double rad = deg * (kPi / 180.0);
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Point2& p : points) {
      const double u = p.x * c + p.y * s;
      const double v = -p.x * s + p.y * c;
      lo_u = std::min(lo_u, u);
      hi_u = std::max(hi_u, u);
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
    best = std::min(best, (hi_u - lo_u) * (hi_v - lo_v));
  }
  return best;
}

bool point_in_quad(const std::array<Point2, 4>& quad, const Point2& p) {
  int sign = 0;
  for (int i = 0; i < 4; ++i) {
    const Point2& a = quad[i];
    const Point2& b = quad[(i + 1) % 4];
    const double cr = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cr == 0.0) continue;  // on the edge counts as inside
    const int s = cr > 0.0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return true;
}

int64_t count_quad_pixels(const RotatedRect& rect, int canvas_px) {
  const auto quad = corners(rect);
  int64_t count = 0;
  for (int y = 0; y < canvas_px; ++y) {
    for (int x = 0; x < canvas_px; ++x) {
      if (point_in_quad(quad, Point2{x + 0.5, y + 0.5})) ++count;
    }
  }
  return count;
}

double brute_force_ap(const std::vector<Detection>& dets,
                      const std::map<std::string, std::vector<AABB>>& gts,
                      double iou_threshold, double confidence_floor) {
  int64_t total_gt = 0;
  for (const auto& [id, boxes] : gts) total_gt += boxes.size();

  std::vector<size_t> keep;
  for (size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].confidence >= confidence_floor) keep.push_back(i);
  }
  std::stable_sort(keep.begin(), keep.end(), [&](size_t a, size_t b) {
    if (dets[a].confidence != dets[b].confidence) {
      return dets[a].confidence > dets[b].confidence;
    }
    return dets[a].image_id < dets[b].image_id;
  });

  std::map<std::string, std::vector<bool>> used;
  for (const auto& [id, boxes] : gts) used[id].assign(boxes.size(), false);

  std::vector<bool> is_tp;
  for (const size_t i : keep) {
    const Detection& det = dets[i];
    bool matched = false;
    const auto it = gts.find(det.image_id);
    if (it != gts.end()) {
      int best = -1;
      double best_iou = -1.0;
      for (size_t g = 0; g < it->second.size(); ++g) {
        if (used[det.image_id][g]) continue;
        // independent IoU computation
        const AABB& gt = it->second[g];
        const double ix = std::max(
            0.0, std::min(det.aabb.x_max, gt.x_max) -
                     std::max(det.aabb.x_min, gt.x_min));
        const double iy = std::max(
            0.0, std::min(det.aabb.y_max, gt.y_max) -
                     std::max(det.aabb.y_min, gt.y_min));
        const double inter = ix * iy;
        const double uni = det.aabb.area() + gt.area() - inter;
        const double iou = uni > 0.0 ? inter / uni : 0.0;
        if (iou >= iou_threshold && iou > best_iou) {
          best_iou = iou;
          best = static_cast<int>(g);
        }
      }
      if (best >= 0) {
        used[det.image_id][best] = true;
        matched = true;
      }
    }
    is_tp.push_back(matched);
  }

  std::vector<double> precisions, recalls;
  int64_t tp = 0;
  for (size_t i = 0; i < is_tp.size(); ++i) {
    if (is_tp[i]) ++tp;
    precisions.push_back(static_cast<double>(tp) / (i + 1));
    recalls.push_back(static_cast<double>(tp) / total_gt);
  }

  double sum = 0.0;
  for (int r = 0; r <= 100; ++r) {
    const double target = r / 100.0;
    double best = 0.0;
    for (size_t i = 0; i < precisions.size(); ++i) {
      if (recalls[i] >= target - 1e-12) best = std::max(best, precisions[i]);
    }
    sum += best;
  }
  return sum / 101.0;
}

}  // namespace aerogen::oracles
