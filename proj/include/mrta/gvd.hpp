#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <boost/polygon/voronoi.hpp>

#include "mrta/errors.hpp"
#include "mrta/geometry.hpp"
#include "mrta/instance.hpp"
#include "mrta/roadmap.hpp"

namespace mrta {

// Workspace sides carry ids 0..3 so obstacle-free maps still yield a medial
// axis; polygonal obstacles start at id 4.
inline constexpr int kFirstObstacleId = 4;

struct BoundarySample {
    Point p;
    int obstacle_id;
};

// Intermediate skeleton graph between GVD construction and regularization.
struct SkelGraph {
    std::vector<Point> pos;
    std::vector<std::set<int>> adj;

    int add_node(Point p) {
        pos.push_back(p);
        adj.emplace_back();
        return static_cast<int>(pos.size()) - 1;
    }
    void add_edge(int u, int v) {
        if (u == v) return;
        adj[u].insert(v);
        adj[v].insert(u);
    }
    int degree(int u) const { return static_cast<int>(adj[u].size()); }
    size_t size() const { return pos.size(); }

    // Drop flagged nodes and renumber the rest, preserving relative order.
    void remove_nodes(const std::vector<bool>& dead) {
        std::vector<int> remap(pos.size(), -1);
        int next = 0;
        for (size_t i = 0; i < pos.size(); ++i)
            if (!dead[i]) remap[i] = next++;
        std::vector<Point> npos(next);
        std::vector<std::set<int>> nadj(next);
        for (size_t i = 0; i < pos.size(); ++i) {
            if (dead[i]) continue;
            npos[remap[i]] = pos[i];
            for (int v : adj[i])
                if (!dead[v]) nadj[remap[i]].insert(remap[v]);
        }
        pos = std::move(npos);
        adj = std::move(nadj);
    }
};

inline void sample_segment(Point a, Point b, double spacing, int id,
                           std::vector<BoundarySample>& out) {
    double len = dist(a, b);
    int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    // Endpoint b is emitted by the next segment of the ring.
    for (int k = 0; k < pieces; ++k)
        out.push_back({a + (b - a) * (static_cast<double>(k) / pieces), id});
}

inline std::vector<BoundarySample>
sample_obstacle_boundaries(const std::vector<Obstacle>& obstacles,
                           const Rect& w, double spacing) {
    std::vector<BoundarySample> out;
    Point c0{w.xmin, w.ymin}, c1{w.xmax, w.ymin}, c2{w.xmax, w.ymax},
        c3{w.xmin, w.ymax};
    sample_segment(c0, c1, spacing, 0, out);
    sample_segment(c1, c2, spacing, 1, out);
    sample_segment(c2, c3, spacing, 2, out);
    sample_segment(c3, c0, spacing, 3, out);
    for (size_t i = 0; i < obstacles.size(); ++i) {
        const auto& v = obstacles[i].vertices;
        for (size_t k = 0; k < v.size(); ++k)
            sample_segment(v[k], v[(k + 1) % v.size()], spacing,
                           kFirstObstacleId + static_cast<int>(i), out);
    }
    return out;
}

// Liang-Barsky segment/rectangle clipping.
inline bool clip_segment(Point& a, Point& b, const Rect& w) {
    double t0 = 0, t1 = 1;
    double dx = b.x - a.x, dy = b.y - a.y;
    auto clip = [&](double p, double q) {
        if (std::fabs(p) < 1e-15) return q >= 0;
        double t = q / p;
        if (p < 0) {
            if (t > t1) return false;
            if (t > t0) t0 = t;
        } else {
            if (t < t0) return false;
            if (t < t1) t1 = t;
        }
        return true;
    };
    if (!clip(-dx, a.x - w.xmin) || !clip(dx, w.xmax - a.x) ||
        !clip(-dy, a.y - w.ymin) || !clip(dy, w.ymax - a.y))
        return false;
    Point na{a.x + t0 * dx, a.y + t0 * dy};
    Point nb{a.x + t1 * dx, a.y + t1 * dy};
    a = na;
    b = nb;
    return true;
}

// Approximate GVD: Voronoi diagram of the boundary samples, keeping edges
// whose two nearest samples carry distinct obstacle ids.
inline SkelGraph build_gvd(const std::vector<BoundarySample>& samples,
                           const Rect& workspace) {
    std::set<int> ids;
    for (const auto& s : samples) ids.insert(s.obstacle_id);
    if (ids.size() < 2)
        throw DegenerateInput("all samples share one obstacle id");

    const double scale = 65536.0;
    std::vector<boost::polygon::point_data<int>> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples)
        pts.emplace_back(static_cast<int>(std::llround(s.p.x * scale)),
                         static_cast<int>(std::llround(s.p.y * scale)));
    boost::polygon::voronoi_diagram<double> vd;
    boost::polygon::construct_voronoi(pts.begin(), pts.end(), &vd);

    SkelGraph g;
    std::map<std::pair<long long, long long>, int> snap;
    auto node_at = [&](Point p) {
        auto key = std::make_pair(std::llround(p.x * 1e6), std::llround(p.y * 1e6));
        auto it = snap.find(key);
        if (it != snap.end()) return it->second;
        int id = g.add_node(p);
        snap[key] = id;
        return id;
    };

    for (const auto& edge : vd.edges()) {
        if (!edge.is_primary() || !edge.is_finite()) continue;
        if (edge.cell()->source_index() > edge.twin()->cell()->source_index())
            continue; // visit each edge once
        int ia = samples[edge.cell()->source_index()].obstacle_id;
        int ib = samples[edge.twin()->cell()->source_index()].obstacle_id;
        if (ia == ib) continue;
        Point a{edge.vertex0()->x() / scale, edge.vertex0()->y() / scale};
        Point b{edge.vertex1()->x() / scale, edge.vertex1()->y() / scale};
        if (!clip_segment(a, b, workspace)) continue;
        if (dist(a, b) <= 1e-7) continue;
        g.add_edge(node_at(a), node_at(b));
    }
    return g;
}

// Remove nodes whose clearance is below r, their incident edges, and any
// node left isolated.
inline SkelGraph prune_inaccessible(SkelGraph g,
                                    const std::vector<Obstacle>& obstacles,
                                    const Rect& workspace, double r) {
    std::vector<bool> dead(g.size(), false);
    for (size_t i = 0; i < g.size(); ++i)
        if (clearance(g.pos[i], obstacles, workspace) < r - kGeoEps)
            dead[i] = true;
    g.remove_nodes(dead);
    dead.assign(g.size(), false);
    bool any_alive = false;
    for (size_t i = 0; i < g.size(); ++i) {
        if (g.degree(static_cast<int>(i)) == 0)
            dead[i] = true;
        else
            any_alive = true;
    }
    if (!any_alive) throw EmptyRoadmap("no accessible roadmap nodes remain");
    g.remove_nodes(dead);
    return g;
}

// Discretization noise shows up as short terminal whiskers near junctions;
// trim any terminal branch shorter than min_len.
inline SkelGraph prune_short_spurs(SkelGraph g, double min_len) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<bool> dead(g.size(), false);
        for (size_t start = 0; start < g.size(); ++start) {
            if (dead[start] || g.degree(static_cast<int>(start)) != 1) continue;
            std::vector<int> branch{static_cast<int>(start)};
            double len = 0;
            int prev = -1, cur = static_cast<int>(start);
            while (true) {
                int next = -1;
                for (int v : g.adj[cur])
                    if (v != prev) {
                        next = v;
                        break;
                    }
                if (next < 0) break;
                len += dist(g.pos[cur], g.pos[next]);
                if (g.degree(next) != 2 || len >= min_len) break;
                branch.push_back(next);
                prev = cur;
                cur = next;
            }
            if (len < min_len) {
                for (int n : branch) dead[n] = true;
                changed = true;
            }
        }
        if (changed) g.remove_nodes(dead);
        if (g.size() == 0) throw EmptyRoadmap("spur pruning removed everything");
    }
    return g;
}

// Degree-1 terminals, nodes with degree >= 3, plus a designated lowest-id
// node in every pure-cycle component.
inline std::set<int> find_jc_nodes(const SkelGraph& g) {
    std::set<int> jc;
    for (size_t i = 0; i < g.size(); ++i) {
        int d = g.degree(static_cast<int>(i));
        if (d == 1 || d >= 3) jc.insert(static_cast<int>(i));
    }
    // Pure-cycle components get a designated JC at their lowest id.
    std::vector<int> comp(g.size(), -1);
    int nc = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{static_cast<int>(i)};
        comp[i] = nc;
        bool has_jc = false;
        int lowest = static_cast<int>(i);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (jc.count(u)) has_jc = true;
            lowest = std::min(lowest, u);
            for (int v : g.adj[u])
                if (comp[v] < 0) {
                    comp[v] = nc;
                    stack.push_back(v);
                }
        }
        if (!has_jc && g.degree(lowest) > 0) jc.insert(lowest);
        ++nc;
    }
    return jc;
}

// Maximal JC-free chains between two JC occurrences, as skeleton node ids.
inline std::vector<std::vector<int>> find_sections(const SkelGraph& g,
                                                   const std::set<int>& jc) {
    std::set<std::pair<int, int>> used; // directed traversed edges
    std::vector<std::vector<int>> chains;
    for (int start : jc) {
        std::vector<int> nbrs(g.adj[start].begin(), g.adj[start].end());
        for (int first : nbrs) {
            if (used.count({start, first})) continue;
            std::vector<int> chain{start, first};
            used.insert({start, first});
            used.insert({first, start});
            int prev = start, cur = first;
            while (!jc.count(cur)) {
                int next = -1;
                for (int v : g.adj[cur])
                    if (v != prev) {
                        next = v;
                        break;
                    }
                if (next < 0) break; // dangling chain, should not happen
                used.insert({cur, next});
                used.insert({next, cur});
                chain.push_back(next);
                prev = cur;
                cur = next;
            }
            chains.push_back(std::move(chain));
        }
    }
    // Deterministic orientation and ordering.
    for (auto& c : chains) {
        bool flip = false;
        if (c.front() > c.back())
            flip = true;
        else if (c.front() == c.back() && c.size() > 3 && c[1] > c[c.size() - 2])
            flip = true;
        if (flip) std::reverse(c.begin(), c.end());
    }
    auto key = [](const std::vector<int>& c) {
        int inner = c.size() > 2 ? c[1] : std::numeric_limits<int>::max();
        return std::make_tuple(std::min(c.front(), c.back()),
                               std::max(c.front(), c.back()), inner);
    };
    std::sort(chains.begin(), chains.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return chains;
}

// Node count for a section of arc length L: segments = floor(L/2r)+1,
// nodes = segments+1 including both JC endpoints.
inline int regular_node_count(double length, double r) {
    return static_cast<int>(std::floor(length / (2 * r))) + 2;
}

struct RoadmapOptions {
    double sample_spacing_factor = 0.5; // spacing = factor * r
    double spur_min_len_factor = 1.0;   // min spur length = factor * r
};

inline Roadmap gen_roadmap(const Instance& inst, RoadmapOptions opt = {}) {
    const double r = inst.robot_radius;
    auto samples = sample_obstacle_boundaries(inst.obstacles, inst.workspace,
                                              opt.sample_spacing_factor * r);
    SkelGraph skel = build_gvd(samples, inst.workspace);
    skel = prune_inaccessible(std::move(skel), inst.obstacles, inst.workspace, r);
    skel = prune_short_spurs(std::move(skel), opt.spur_min_len_factor * r);
    auto jc = find_jc_nodes(skel);
    auto chains = find_sections(skel, jc);

    Roadmap rm;
    std::map<int, int> jc_final; // skeleton id -> roadmap id
    for (int s : jc) {
        if (skel.degree(s) == 0) continue;
        int id = static_cast<int>(rm.nodes.size());
        jc_final[s] = id;
        rm.nodes.push_back({id, skel.pos[s], NodeKind::JC, {}});
        rm.jc_ids.push_back(id);
    }

    for (const auto& chain : chains) {
        std::vector<Point> poly;
        poly.reserve(chain.size());
        for (int s : chain) poly.push_back(skel.pos[s]);
        double L = polyline_length(poly);
        if (L <= kGeoEps) continue;
        int n = regular_node_count(L, r);
        int a = jc_final.at(chain.front());
        int b = jc_final.at(chain.back());
        if (a == b && n < 4) continue; // degenerate loop, noise
        auto pos = resample_polyline(poly, n);

        Section sec;
        sec.id = static_cast<int>(rm.sections.size());
        sec.jc_endpoints = {a, b};
        sec.length = L;
        double spacing = L / (n - 1);
        int prev = a;
        for (int k = 1; k < n - 1; ++k) {
            int id = static_cast<int>(rm.nodes.size());
            rm.nodes.push_back({id, pos[k], NodeKind::Inner, {sec.id}});
            sec.inner_nodes.push_back(id);
            rm.edges.push_back({prev, id, spacing});
            prev = id;
        }
        rm.edges.push_back({prev, b, spacing});
        sec.center_node = -1; // set below once the chain exists
        rm.nodes[a].section_ids.push_back(sec.id);
        if (b != a) rm.nodes[b].section_ids.push_back(sec.id);
        rm.sections.push_back(std::move(sec));
        rm.sections.back().center_node = section_center(rm.sections.back());
    }
    if (rm.sections.empty()) throw EmptyRoadmap("no sections in roadmap");
    rm.build_adjacency();
    return rm;
}

} // namespace mrta
