#include "gkpos/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gkpos/errors.hpp"

namespace gkpos {

namespace {

// Relative tolerance for orientation tests on near-collinear vertices.
constexpr double kOrientEps = 1e-12;

Polygon ccw_copy(std::span<const PitchPoint> poly) {
    Polygon out(poly.begin(), poly.end());
    if (signed_area(out) < 0.0) std::reverse(out.begin(), out.end());
    return out;
}

// Keep the part of `subject` on the left of the directed edge a→b.
Polygon clip_half_plane(const Polygon& subject, PitchPoint a, PitchPoint b) {
    Polygon out;
    if (subject.empty()) return out;
    out.reserve(subject.size() + 1);
    const PitchPoint edge = b - a;
    auto side = [&](PitchPoint p) { return cross(edge, p - a); };

    for (std::size_t i = 0; i < subject.size(); ++i) {
        const PitchPoint cur = subject[i];
        const PitchPoint nxt = subject[(i + 1) % subject.size()];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0) out.push_back(cur);
        if ((sc >= 0.0) != (sn >= 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

// Signed area of circle(0, r) ∩ triangle(0, a, b), with a and b relative to
// the circle center.
double edge_contribution(PitchPoint a, PitchPoint b, double r) {
    const PitchPoint d = b - a;
    const double qa = dot(d, d);
    if (qa == 0.0) return 0.0;
    const double r2 = r * r;

    std::array<PitchPoint, 4> pts{};
    std::size_t n = 0;
    pts[n++] = a;
    const double qb = dot(a, d);
    const double qc = dot(a, a) - r2;
    const double disc = qb * qb - qa * qc;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double t1 = (-qb - s) / qa;
        const double t2 = (-qb + s) / qa;
        if (t1 > 0.0 && t1 < 1.0) pts[n++] = a + t1 * d;
        if (t2 > 0.0 && t2 < 1.0) pts[n++] = a + t2 * d;
    }
    pts[n++] = b;

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const PitchPoint p = pts[i];
        const PitchPoint q = pts[i + 1];
        const PitchPoint mid = 0.5 * (p + q);
        if (dot(mid, mid) <= r2) {
            total += 0.5 * cross(p, q);
        } else {
            total += 0.5 * r2 * std::atan2(cross(p, q), dot(p, q));
        }
    }
    return total;
}

}  // namespace

double dot(PitchPoint a, PitchPoint b) { return a.x * b.x + a.y * b.y; }
double cross(PitchPoint a, PitchPoint b) { return a.x * b.y - a.y * b.x; }
double norm(PitchPoint a) { return std::hypot(a.x, a.y); }
double distance(PitchPoint a, PitchPoint b) { return norm(b - a); }

double signed_area(std::span<const PitchPoint> poly) {
    if (poly.size() < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        acc += cross(poly[i], poly[(i + 1) % poly.size()]);
    }
    return 0.5 * acc;
}

double polygon_area(std::span<const PitchPoint> poly) { return std::abs(signed_area(poly)); }

double triangle_area(const Triangle2& t) {
    return 0.5 * std::abs(cross(t.v[1] - t.v[0], t.v[2] - t.v[0]));
}

Polygon to_polygon(const Triangle2& t) { return {t.v[0], t.v[1], t.v[2]}; }

bool is_convex(std::span<const PitchPoint> poly) {
    const std::size_t n = poly.size();
    if (n < 4) return true;
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const PitchPoint e1 = poly[(i + 1) % n] - poly[i];
        const PitchPoint e2 = poly[(i + 2) % n] - poly[(i + 1) % n];
        const double c = cross(e1, e2);
        if (std::abs(c) <= kOrientEps * norm(e1) * norm(e2)) continue;
        const int s = c > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    // A star polygon turns consistently but winds more than once.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const PitchPoint e1 = poly[(i + 1) % n] - poly[i];
        const PitchPoint e2 = poly[(i + 2) % n] - poly[(i + 1) % n];
        turning += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    return std::abs(turning) < 2.0 * M_PI + 1e-6;
}

double convex_poly_intersection_area(std::span<const PitchPoint> p, std::span<const PitchPoint> q) {
    if (!is_convex(p)) throw NonConvexPolygon("convex_poly_intersection_area: first polygon is not convex");
    if (!is_convex(q)) throw NonConvexPolygon("convex_poly_intersection_area: second polygon is not convex");
    if (polygon_area(p) == 0.0 || polygon_area(q) == 0.0) return 0.0;

    const Polygon clip = ccw_copy(q);
    Polygon result = ccw_copy(p);
    for (std::size_t i = 0; i < clip.size() && !result.empty(); ++i) {
        result = clip_half_plane(result, clip[i], clip[(i + 1) % clip.size()]);
    }
    const double area = polygon_area(result);
    return std::min({area, polygon_area(p), polygon_area(q)});
}

namespace {

// Center outside the polygon and no edge within reach: exactly empty.
bool disc_misses(const Circle2& c, std::span<const PitchPoint> p) {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const PitchPoint a = p[i];
        const PitchPoint b = p[(i + 1) % p.size()];
        const double side = cross(b - a, c.center - a);
        pos = pos || side > 0.0;
        neg = neg || side < 0.0;
        if (project_onto_segment(c.center, a, b).distance < c.radius) return false;
    }
    return pos && neg;
}

}  // namespace

double circle_poly_intersection_area(const Circle2& c, std::span<const PitchPoint> p) {
    if (c.radius < 0.0) throw InvalidArgument("circle radius must be >= 0");
    if (c.radius == 0.0 || p.size() < 3) return 0.0;
    if (!is_convex(p)) throw NonConvexPolygon("circle_poly_intersection_area: polygon is not convex");
    if (disc_misses(c, p)) return 0.0;

    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        total += edge_contribution(p[i] - c.center, p[(i + 1) % p.size()] - c.center, c.radius);
    }
    const double area = std::abs(total);
    return std::min({area, std::numbers::pi * c.radius * c.radius, polygon_area(p)});
}

double rect_intersection_area(const RectYZ& a, const RectYZ& b) {
    const double w = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    const double h = std::min(a.z1, b.z1) - std::max(a.z0, b.z0);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

PitchPoint foot_of_perpendicular(PitchPoint a, const Line2& line) {
    const PitchPoint d = line.to - line.from;
    const double len2 = dot(d, d);
    if (len2 == 0.0) throw DegenerateGeometry("foot_of_perpendicular: line endpoints coincide");
    const double t = dot(a - line.from, d) / len2;
    return line.from + t * d;
}

SegmentProjection project_onto_segment(PitchPoint p, PitchPoint a, PitchPoint b) {
    const PitchPoint d = b - a;
    const double len2 = dot(d, d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    const PitchPoint q = a + t * d;
    return {q, t, distance(p, q)};
}

}  // namespace gkpos
