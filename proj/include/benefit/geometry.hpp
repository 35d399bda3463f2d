#pragma once

#include <vector>

namespace benefit {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// A line with thickness. `level` is the structural depth (0 = stipe) and
// `parent` indexes into the same descriptor's segment list, -1 for roots.
struct Segment {
  Point a;
  Point b;
  double thickness = 0.0;
  int level = 0;
  int parent = -1;
  bool operator==(const Segment&) const = default;
};

struct Circle {
  Point center;
  double radius = 0.0;
  int parent = -1;
  bool operator==(const Circle&) const = default;
};

struct Polyline {
  std::vector<Point> points;
  bool closed = false;
  bool operator==(const Polyline&) const = default;
};

// 2D drawing instructions shared by seaweed and fungus renderers.
struct GeometryDescriptor {
  std::vector<Segment> segments;
  std::vector<Circle> circles;
  std::vector<Polyline> polylines;
  bool operator==(const GeometryDescriptor&) const = default;
};

}  // namespace benefit
