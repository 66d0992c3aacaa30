#pragma once

#include <array>
#include <span>
#include <vector>

namespace aerogen {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct AABB {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(const Point2& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const AABB&, const AABB&) = default;
};

// Rotated rectangle. angle_deg is counter-clockwise and kept in [0, 180)
// because the shape repeats every half turn; width runs along the angle axis.
struct RotatedRect {
  Point2 center;
  double width = 0.0;
  double height = 0.0;
  double angle_deg = 0.0;

  friend bool operator==(const RotatedRect&, const RotatedRect&) = default;
};

// Maps any angle into [0, 180).
double normalize_angle_deg(double deg);

// Validates width/height > 0 and normalizes the angle.
RotatedRect make_rotated_rect(Point2 center, double width, double height,
                              double angle_deg);

// Corner order: (-w/2,-h/2), (+w/2,-h/2), (+w/2,+h/2), (-w/2,+h/2) in the
// rectangle frame, rotated by angle about center. Consistent winding.
std::array<Point2, 4> corners(const RotatedRect& r);

// Smallest axis-aligned box containing all four corners.
AABB aabb_of(const RotatedRect& r);

// Closed-rectangle membership test.
bool point_in_rect(const RotatedRect& r, const Point2& p);

// Same center/angle, each side extended by margin on both ends.
RotatedRect dilated(const RotatedRect& r, double margin);

// Separating-axis test over the 4 edge normals. Closed rectangles: shared
// edges and single shared points count as intersecting.
bool rects_intersect(const RotatedRect& a, const RotatedRect& b);

// area(a n b) / area(a u b); 0 when the union has zero area.
double iou_aabb(const AABB& a, const AABB& b);

// Strictly convex hull (collinear points dropped), counter-clockwise.
std::vector<Point2> convex_hull(std::span<const Point2> points);

// Minimum-area enclosing rectangle via convex hull + edge sweep (one side of
// the optimum is collinear with a hull edge). Ties resolved toward the
// smallest angle. Throws DataError on degenerate input (all points collinear
// or fewer than 3 distinct).
RotatedRect min_area_rect(std::span<const Point2> points);

}  // namespace aerogen
