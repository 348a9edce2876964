#pragma once

#include <array>
#include <span>
#include <vector>

namespace gkpos {

// Ground-plane coordinates in meters. Origin at the center of the defended
// goal, x points into the pitch (goal line at x = 0), y runs along the goal
// line with the left post at +goal_width/2 and the right post at -goal_width/2.
struct PitchPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const PitchPoint&, const PitchPoint&) = default;
};

// Goal-plane coordinates in meters: y along the goal mouth, z above ground.
struct GoalPoint {
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const GoalPoint&, const GoalPoint&) = default;
};

struct Triangle2 {
    std::array<PitchPoint, 3> v{};
};

struct Circle2 {
    PitchPoint center{};
    double radius = 0.0;
};

// Axis-aligned rectangle in the goal plane.
struct RectYZ {
    double y0 = 0.0;
    double y1 = 0.0;
    double z0 = 0.0;
    double z1 = 0.0;

    double area() const { return (y1 - y0) * (z1 - z0); }
};

using Polygon = std::vector<PitchPoint>;

inline PitchPoint operator+(PitchPoint a, PitchPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PitchPoint operator-(PitchPoint a, PitchPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PitchPoint operator*(double s, PitchPoint a) { return {s * a.x, s * a.y}; }

double dot(PitchPoint a, PitchPoint b);
double cross(PitchPoint a, PitchPoint b);
double norm(PitchPoint a);
double distance(PitchPoint a, PitchPoint b);

// Shoelace signed area; positive for counter-clockwise winding.
double signed_area(std::span<const PitchPoint> poly);
double polygon_area(std::span<const PitchPoint> poly);

double triangle_area(const Triangle2& t);
Polygon to_polygon(const Triangle2& t);

// True when every turn has the same orientation (collinear turns allowed).
bool is_convex(std::span<const PitchPoint> poly);

// Area of p ∩ q for convex p and q of either winding. Zero-area inputs act as
// empty sets. Throws NonConvexPolygon if either input is not convex.
double convex_poly_intersection_area(std::span<const PitchPoint> p, std::span<const PitchPoint> q);

// Exact area of circle ∩ convex polygon. Sums, edge by edge, the signed area
// of the circle intersected with the triangle (center, a, b); pieces of the
// edge inside the circle contribute a triangle, pieces outside a sector.
double circle_poly_intersection_area(const Circle2& c, std::span<const PitchPoint> p);

double rect_intersection_area(const RectYZ& a, const RectYZ& b);

struct Line2 {
    PitchPoint from{};
    PitchPoint to{};
};

// Orthogonal projection of a onto the infinite line through line.from and
// line.to. Throws DegenerateGeometry if the endpoints coincide.
PitchPoint foot_of_perpendicular(PitchPoint a, const Line2& line);

// Distance from p to the closed segment [a, b], and the closest point on it.
struct SegmentProjection {
    PitchPoint point{};
    double t = 0.0;  // parameter along a→b, in [0, 1]
    double distance = 0.0;
};
SegmentProjection project_onto_segment(PitchPoint p, PitchPoint a, PitchPoint b);

}  // namespace gkpos
