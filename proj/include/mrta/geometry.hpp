#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mrta {

// Absolute tolerance for coincidence tests, in meters.
inline constexpr double kGeoEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

struct Rect {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool contains(Point p) const {
        return p.x >= xmin - kGeoEps && p.x <= xmax + kGeoEps &&
               p.y >= ymin - kGeoEps && p.y <= ymax + kGeoEps;
    }
    // Distance from an interior point to the nearest side.
    double inner_clearance(Point p) const {
        return std::min(std::min(p.x - xmin, xmax - p.x),
                        std::min(p.y - ymin, ymax - p.y));
    }
};

struct Obstacle {
    std::vector<Point> vertices; // simple polygon, any orientation
};

inline double signed_area(const std::vector<Point>& poly) {
    double a = 0;
    for (size_t i = 0, n = poly.size(); i < n; ++i)
        a += cross(poly[i], poly[(i + 1) % n]);
    return a / 2.0;
}

inline double dist_point_segment(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= kGeoEps * kGeoEps) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

inline bool point_on_segment(Point p, Point a, Point b) {
    return dist_point_segment(p, a, b) <= kGeoEps;
}

// Crossing-number test; points on the boundary are not guaranteed to be
// classified consistently, callers handle the boundary separately.
inline bool point_in_polygon(Point p, const std::vector<Point>& poly) {
    bool inside = false;
    for (size_t i = 0, n = poly.size(); i < n; ++i) {
        Point a = poly[i], b = poly[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

// Segment intersection including endpoint and collinear touching.
inline bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
    auto orient = [](Point a, Point b, Point c) {
        double v = cross(b - a, c - a);
        if (v > kGeoEps) return 1;
        if (v < -kGeoEps) return -1;
        return 0;
    };
    int o1 = orient(p1, p2, q1);
    int o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1);
    int o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && point_on_segment(q1, p1, p2)) return true;
    if (o2 == 0 && point_on_segment(q2, p1, p2)) return true;
    if (o3 == 0 && point_on_segment(p1, q1, q2)) return true;
    if (o4 == 0 && point_on_segment(p2, q1, q2)) return true;
    return false;
}

inline bool point_in_obstacle(Point p, const Obstacle& ob) {
    for (size_t i = 0, n = ob.vertices.size(); i < n; ++i)
        if (point_on_segment(p, ob.vertices[i], ob.vertices[(i + 1) % n]))
            return true;
    return point_in_polygon(p, ob.vertices);
}

// Distance to the obstacle region: zero inside or on the boundary.
inline double dist_to_obstacle(Point p, const Obstacle& ob) {
    if (point_in_polygon(p, ob.vertices)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0, n = ob.vertices.size(); i < n; ++i)
        d = std::min(d, dist_point_segment(p, ob.vertices[i],
                                           ob.vertices[(i + 1) % n]));
    return d;
}

// Clearance of a point in free space: distance to the nearest obstacle or
// workspace side.
inline double clearance(Point p, const std::vector<Obstacle>& obstacles,
                        const Rect& workspace) {
    double d = workspace.inner_clearance(p);
    for (const auto& ob : obstacles) d = std::min(d, dist_to_obstacle(p, ob));
    return d;
}

// True iff segment ab touches no obstacle interior or boundary. Boundary
// contact counts as intersection.
inline bool line_of_sight(Point a, Point b,
                          const std::vector<Obstacle>& obstacles) {
    for (const auto& ob : obstacles) {
        const auto& v = ob.vertices;
        size_t n = v.size();
        if (dist(a, b) <= kGeoEps) {
            if (point_in_obstacle(a, ob)) return false;
            continue;
        }
        for (size_t i = 0; i < n; ++i)
            if (segments_intersect(a, b, v[i], v[(i + 1) % n])) return false;
        // No edge contact: the segment is fully inside or fully outside.
        if (point_in_polygon(Point{(a.x + b.x) / 2, (a.y + b.y) / 2}, v))
            return false;
    }
    return true;
}

inline double polyline_length(const std::vector<Point>& pts) {
    double L = 0;
    for (size_t i = 1; i < pts.size(); ++i) L += dist(pts[i - 1], pts[i]);
    return L;
}

// Resample a polyline at n points with uniform arc-length spacing,
// keeping both endpoints.
inline std::vector<Point> resample_polyline(const std::vector<Point>& pts,
                                            int n) {
    std::vector<Point> out;
    out.reserve(n);
    double L = polyline_length(pts);
    if (n < 2 || L <= kGeoEps) return {pts.front(), pts.back()};
    double spacing = L / (n - 1);
    out.push_back(pts.front());
    double walked = 0;       // arc length consumed on current segment chain
    size_t seg = 0;          // index of segment start
    double seg_used = 0;     // consumed portion of current segment
    for (int k = 1; k < n - 1; ++k) {
        double target = spacing * k;
        while (seg + 1 < pts.size()) {
            double seg_len = dist(pts[seg], pts[seg + 1]);
            if (walked + (seg_len - seg_used) >= target - kGeoEps) break;
            walked += seg_len - seg_used;
            seg_used = 0;
            ++seg;
        }
        double seg_len = dist(pts[seg], pts[seg + 1]);
        double need = target - walked + seg_used;
        double t = seg_len > kGeoEps ? need / seg_len : 0.0;
        out.push_back(pts[seg] + (pts[seg + 1] - pts[seg]) * t);
        walked = target;
        seg_used = need;
    }
    out.push_back(pts.back());
    return out;
}

} // namespace mrta
