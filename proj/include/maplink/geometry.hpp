#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "maplink/errors.hpp"

namespace maplink {

// Coordinates are image pixels: x grows right, y grows down. Angles are
// reported as if y grew up (y is negated before any atan2), so 45 degrees
// means visually counter-clockwise from the +x axis. All angles live in
// degrees on the half-open interval [0, 180): a text axis has no direction,
// only an orientation.

struct Vec2 {
    double x{0.0};
    double y{0.0};

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// Ordered vertex list of a bounding polygon (pixel coordinates).
using Polygon = std::vector<Vec2>;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Normalizes an axis angle in degrees to [0, 180).
inline double normalize_axis_angle(double deg) {
    double a = std::fmod(deg, 180.0);
    if (a < 0.0) a += 180.0;
    if (a >= 180.0) a = 0.0;  // fmod rounding can land exactly on 180
    return a;
}

/// Orientation of a pixel-space direction, reported y-up, in [0, 180).
inline double axis_angle_of(Vec2 dir) {
    return normalize_axis_angle(rad_to_deg(std::atan2(-dir.y, dir.x)));
}

/// Minimum-area oriented rectangle. `width` follows the text axis (the longer
/// side except for near-square boxes, which keep the native caliper axis and
/// may invert the order by up to 1%), `height` is the other side.
struct OrientedBox {
    Vec2 center;
    double width{0.0};
    double height{0.0};
    double angle{0.0};  // degrees in [0, 180), orientation of the width axis

    /// Unit vector of the width axis in pixel coordinates.
    Vec2 axis_u() const {
        double r = deg_to_rad(angle);
        return {std::cos(r), -std::sin(r)};
    }
    /// Unit vector of the height axis in pixel coordinates.
    Vec2 axis_v() const {
        double r = deg_to_rad(angle);
        return {std::sin(r), std::cos(r)};
    }
    std::array<Vec2, 4> corners() const {
        Vec2 u = axis_u() * (width * 0.5);
        Vec2 v = axis_v() * (height * 0.5);
        return {center - u - v, center + u - v, center + u + v, center - u + v};
    }
};

inline void validate_polygon(const Polygon& p) {
    if (p.size() < 3) {
        throw InputError("polygon has " + std::to_string(p.size()) + " vertices (need >= 3)");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % p.size()];
        if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
            throw InputError("polygon vertex " + std::to_string(i) + " is not finite");
        }
        if (a == b && i + 1 < p.size()) {
            throw InputError("polygon has identical consecutive vertices at index " + std::to_string(i));
        }
    }
}

/// Convex hull by monotone chain with collinear points dropped. Returns one
/// point for a degenerate cloud, two for a collinear one.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {  // upper chain
        while (k >= lo && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace detail {

struct RectCandidate {
    double area{0.0};
    double angle{0.0};   // native first axis, degrees [0, 180)
    double extent_u{0.0};
    double extent_v{0.0};
    Vec2 center;
};

/// Axis-aligned-in-(u,v) enclosing rectangle of `pts` for a given axis angle.
inline RectCandidate enclosing_rect(const std::vector<Vec2>& pts, double angle_deg) {
    double r = deg_to_rad(angle_deg);
    Vec2 u{std::cos(r), -std::sin(r)};
    Vec2 v{std::sin(r), std::cos(r)};
    double umin = dot(pts[0], u), umax = umin;
    double vmin = dot(pts[0], v), vmax = vmin;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double su = dot(pts[i], u);
        double sv = dot(pts[i], v);
        umin = std::min(umin, su);
        umax = std::max(umax, su);
        vmin = std::min(vmin, sv);
        vmax = std::max(vmax, sv);
    }
    RectCandidate c;
    c.angle = angle_deg;
    c.extent_u = umax - umin;
    c.extent_v = vmax - vmin;
    c.area = c.extent_u * c.extent_v;
    c.center = u * ((umin + umax) * 0.5) + v * ((vmin + vmax) * 0.5);
    return c;
}

}  // namespace detail

/// Minimum-area oriented rectangle of a polygon's convex hull (rotating
/// calipers over hull edges). Collinear input degenerates to a zero-height
/// box spanning the hull segment. Fewer than 3 vertices is an input error.
inline OrientedBox min_area_rect(const Polygon& polygon) {
    validate_polygon(polygon);
    std::vector<Vec2> hull = convex_hull(polygon);

    if (hull.size() == 1) {
        return OrientedBox{hull[0], 0.0, 0.0, 0.0};
    }
    if (hull.size() == 2) {
        Vec2 d = hull[1] - hull[0];
        return OrientedBox{(hull[0] + hull[1]) * 0.5, norm(d), 0.0, axis_angle_of(d)};
    }

    // A minimal enclosing rectangle shares a side with some hull edge. Angles
    // are quantized through degrees first so the reconstruction below uses
    // exactly the axes the search used. Ties go to the smaller angle.
    bool have = false;
    detail::RectCandidate best;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        Vec2 e = hull[(i + 1) % hull.size()] - hull[i];
        detail::RectCandidate c = detail::enclosing_rect(hull, axis_angle_of(e));
        if (!have || c.area < best.area || (c.area == best.area && c.angle < best.angle)) {
            best = c;
            have = true;
        }
    }

    OrientedBox box;
    box.center = best.center;
    double longer = std::max(best.extent_u, best.extent_v);
    double shorter = std::min(best.extent_u, best.extent_v);
    if (shorter >= 0.99 * longer) {
        // Near-square: the longer-side rule is noise; keep the native axis.
        box.width = best.extent_u;
        box.height = best.extent_v;
        box.angle = best.angle;
    } else if (best.extent_u >= best.extent_v) {
        box.width = best.extent_u;
        box.height = best.extent_v;
        box.angle = best.angle;
    } else {
        box.width = best.extent_v;
        box.height = best.extent_u;
        box.angle = normalize_axis_angle(best.angle + 90.0);
    }
    return box;
}

/// Precomputed per-box data for repeated distance queries (MST construction
/// evaluates millions of pairs; corners and edge inverses are hoisted here).
struct BoxGeom {
    std::array<Vec2, 4> corner;
    std::array<Vec2, 4> edge;            // corner[i] -> corner[(i+1)%4]
    std::array<double, 4> inv_edge_len2;  // 0 for degenerate edges
    Vec2 center;
    Vec2 u, v;
    double half_w{0.0}, half_h{0.0};
};

inline BoxGeom make_box_geom(const OrientedBox& b) {
    BoxGeom g;
    g.corner = b.corners();
    for (int i = 0; i < 4; ++i) {
        g.edge[i] = g.corner[(i + 1) % 4] - g.corner[i];
        double len2 = dot(g.edge[i], g.edge[i]);
        g.inv_edge_len2[i] = len2 > 0.0 ? 1.0 / len2 : 0.0;
    }
    g.center = b.center;
    g.u = b.axis_u();
    g.v = b.axis_v();
    g.half_w = b.width * 0.5;
    g.half_h = b.height * 0.5;
    return g;
}

namespace detail {

inline double point_segment_d2(Vec2 p, Vec2 s0, Vec2 e, double inv_len2) {
    double t = dot(p - s0, e) * inv_len2;
    t = std::clamp(t, 0.0, 1.0);
    Vec2 diff = p - s0 - e * t;
    return dot(diff, diff);
}

inline double projection_radius(const BoxGeom& g, Vec2 axis) {
    return g.half_w * std::abs(dot(g.u, axis)) + g.half_h * std::abs(dot(g.v, axis));
}

/// Separating-axis test on the four box axes; touching counts as overlap.
inline bool boxes_overlap(const BoxGeom& a, const BoxGeom& b) {
    Vec2 delta = b.center - a.center;
    const std::array<Vec2, 4> axes{a.u, a.v, b.u, b.v};
    for (Vec2 axis : axes) {
        double gap = std::abs(dot(delta, axis)) - projection_radius(a, axis) - projection_radius(b, axis);
        if (gap > 0.0) return false;
    }
    return true;
}

}  // namespace detail

/// Minimum Euclidean distance between two oriented boxes as solid regions:
/// 0 when they intersect or touch, otherwise the closest boundary approach.
inline double box_min_distance(const BoxGeom& a, const BoxGeom& b) {
    if (detail::boxes_overlap(a, b)) return 0.0;
    double d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            d2 = std::min(d2, detail::point_segment_d2(a.corner[i], b.corner[j], b.edge[j], b.inv_edge_len2[j]));
            d2 = std::min(d2, detail::point_segment_d2(b.corner[i], a.corner[j], a.edge[j], a.inv_edge_len2[j]));
        }
    }
    return std::sqrt(d2);
}

inline double box_min_distance(const OrientedBox& a, const OrientedBox& b) {
    return box_min_distance(make_box_geom(a), make_box_geom(b));
}

/// Undirected difference between two axis orientations, in [0, 90] degrees.
inline double axis_angle_diff(const OrientedBox& a, const OrientedBox& b) {
    double raw = std::abs(a.angle - b.angle);
    return std::min(raw, 180.0 - raw);
}

}  // namespace maplink
