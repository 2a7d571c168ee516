#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mrta/errors.hpp"
#include "mrta/instance.hpp"

namespace mrta {

namespace detail {

// mt19937_64 output mapped to [0,1) by hand so generated instances are
// byte-identical across standard libraries
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int pick(int lo, int hi) { // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }
};

inline Obstacle rect_obstacle(double x0, double y0, double x1, double y1) {
    return Obstacle{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

inline double obstacle_gap(const Obstacle& a, const Obstacle& b) {
    double best = std::numeric_limits<double>::infinity();
    size_t na = a.vertices.size(), nb = b.vertices.size();
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < nb; ++j) {
            best = std::min(best, dist_point_segment(a.vertices[i],
                                                     b.vertices[j],
                                                     b.vertices[(j + 1) % nb]));
            best = std::min(best, dist_point_segment(b.vertices[j],
                                                     a.vertices[i],
                                                     a.vertices[(i + 1) % na]));
        }
    return best;
}

inline void place_entities(Instance& inst, int n, int m, Rng& rng,
                           double rxlo, double rxhi, double txlo, double txhi) {
    double r = inst.robot_radius;
    const Rect& w = inst.workspace;
    auto place = [&](std::vector<Point>& into, double xlo, double xhi,
                     const std::string& what) {
        for (long tries = 0; tries < 20000; ++tries) {
            Point p{rng.uniform(xlo, xhi), rng.uniform(w.ymin, w.ymax)};
            if (clearance(p, inst.obstacles, w) < r + 0.05) continue;
            bool near = false;
            for (const auto& q : inst.robots)
                if (dist(p, q) <= 2 * r + 1e-6) near = true;
            for (const auto& q : inst.tasks)
                if (dist(p, q) <= 2 * r + 1e-6) near = true;
            if (near) continue;
            into.push_back(p);
            return;
        }
        throw PlacementFailure("could not place " + what +
                               " after 20000 attempts");
    };
    for (int i = 0; i < n; ++i)
        place(inst.robots, rxlo, rxhi, "robot " + std::to_string(i));
    for (int j = 0; j < m; ++j)
        place(inst.tasks, txlo, txhi, "task " + std::to_string(j));
}

} // namespace detail

// Two open halves joined by a single 6 m corridor. Robots spawn on the
// left, tasks on the right, forcing traffic through the corridor.
inline Instance gen_corridor(int n, int m, unsigned long long seed) {
    Instance inst;
    inst.workspace = {0, 0, 80, 40};
    inst.robot_radius = 0.5;
    // slab edges stop 0.8 m short of the boundary; the remaining slit is
    // narrower than a robot, so the roadmap prunes it away
    inst.obstacles.push_back(detail::rect_obstacle(30, 0.8, 50, 17));
    inst.obstacles.push_back(detail::rect_obstacle(30, 23, 50, 39.2));
    detail::Rng rng(seed * 3 + 1);
    detail::place_entities(inst, n, m, rng, 1, 28, 52, 79);
    pad_dummies(inst);
    return inst;
}

// 3x3 room grid, 2 m walls, 6 m doors centered in every shared wall.
inline Instance gen_rooms(int n, int m, unsigned long long seed) {
    Instance inst;
    inst.workspace = {0, 0, 100, 100};
    inst.robot_radius = 0.5;
    const double walls[2] = {32, 65}; // low edge of each wall band
    const double margin = 0.8;
    auto spans = [&](int k) { // the three open spans between wall bands
        double lo[3] = {margin, walls[0] + 2, walls[1] + 2};
        double hi[3] = {walls[0], walls[1], 100 - margin};
        return std::pair<double, double>{lo[k], hi[k]};
    };
    for (double w : walls)
        for (int k = 0; k < 3; ++k) {
            auto [lo, hi] = spans(k);
            double c = (lo + hi) / 2;
            // vertical band [w, w+2] with a door gap
            inst.obstacles.push_back(detail::rect_obstacle(w, lo, w + 2, c - 3));
            inst.obstacles.push_back(detail::rect_obstacle(w, c + 3, w + 2, hi));
            // horizontal band [w, w+2]
            inst.obstacles.push_back(detail::rect_obstacle(lo, w, c - 3, w + 2));
            inst.obstacles.push_back(detail::rect_obstacle(c + 3, w, hi, w + 2));
        }
    // wall crossings
    for (double wx : walls)
        for (double wy : walls)
            inst.obstacles.push_back(
                detail::rect_obstacle(wx, wy, wx + 2, wy + 2));
    detail::Rng rng(seed * 3 + 2);
    detail::place_entities(inst, n, m, rng, 0, 100, 0, 100);
    pad_dummies(inst);
    return inst;
}

// Scattered convex polygons with generous gaps.
inline Instance gen_random_polygons(int n, int m, unsigned long long seed) {
    Instance inst;
    inst.workspace = {0, 0, 60, 60};
    inst.robot_radius = 0.5;
    detail::Rng rng(seed * 3 + 3);
    int want = 10 + rng.pick(0, 4);
    for (long tries = 0; tries < 2000 && static_cast<int>(inst.obstacles.size()) < want;
         ++tries) {
        double rad = rng.uniform(2, 5);
        Point c{rng.uniform(3 + rad, 57 - rad), rng.uniform(3 + rad, 57 - rad)};
        int k = rng.pick(5, 8);
        std::vector<double> ang(k);
        for (auto& a : ang) a = rng.uniform(0, 2 * M_PI);
        std::sort(ang.begin(), ang.end());
        Obstacle ob;
        for (double a : ang)
            ob.vertices.push_back(
                {c.x + rad * std::cos(a), c.y + rad * std::sin(a)});
        if (std::fabs(signed_area(ob.vertices)) < 1.0) continue;
        bool ok = true;
        for (const auto& other : inst.obstacles)
            if (detail::obstacle_gap(ob, other) < 3.0) ok = false;
        if (ok) inst.obstacles.push_back(std::move(ob));
    }
    detail::place_entities(inst, n, m, rng, 0, 60, 0, 60);
    pad_dummies(inst);
    return inst;
}

inline Instance gen_instance(const std::string& map_kind, int n, int m,
                             unsigned long long seed) {
    if (n < 1 || m < 1) throw ValidationError("need at least one robot and task");
    if (map_kind == "corridor") return gen_corridor(n, m, seed);
    if (map_kind == "rooms") return gen_rooms(n, m, seed);
    if (map_kind == "random-polygons") return gen_random_polygons(n, m, seed);
    throw ValidationError("unknown map kind: " + map_kind);
}

} // namespace mrta
