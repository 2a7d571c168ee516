#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrta/errors.hpp"
#include "mrta/geometry.hpp"

namespace mrta {

enum class NodeKind { JC, Inner };

struct RoadmapNode {
    int id = -1;
    Point position;
    NodeKind kind = NodeKind::Inner;
    std::vector<int> section_ids; // inner nodes: exactly one entry
};

struct RoadmapEdge {
    int u = -1;
    int v = -1;
    double weight = 0; // arc length along the section, > 0
};

struct Section {
    int id = -1;
    std::pair<int, int> jc_endpoints{-1, -1}; // may repeat for loop sections
    std::vector<int> inner_nodes;             // ordered first JC -> second JC
    double length = 0;                        // L_s
    int center_node = -1;

    int node_count() const { return static_cast<int>(inner_nodes.size()) + 2; }
    double spacing() const { return length / (node_count() - 1); }

    // Full node chain from the first JC endpoint to the second.
    std::vector<int> chain() const {
        std::vector<int> c;
        c.reserve(node_count());
        c.push_back(jc_endpoints.first);
        c.insert(c.end(), inner_nodes.begin(), inner_nodes.end());
        c.push_back(jc_endpoints.second);
        return c;
    }
    // Arc position of a chain index measured from the first JC endpoint.
    double arc_pos(int chain_index) const { return spacing() * chain_index; }
};

struct Roadmap {
    std::vector<RoadmapNode> nodes;
    std::vector<RoadmapEdge> edges;
    std::vector<Section> sections;
    std::vector<int> jc_ids;

    std::vector<std::vector<std::pair<int, double>>> adj; // node -> (nbr, w)

    void build_adjacency() {
        adj.assign(nodes.size(), {});
        for (const auto& e : edges) {
            adj[e.u].push_back({e.v, e.weight});
            adj[e.v].push_back({e.u, e.weight});
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());
    }

    bool is_jc(int id) const { return nodes[id].kind == NodeKind::JC; }

    // Section containing a non-JC node.
    int section_of_inner(int id) const {
        return nodes[id].section_ids.empty() ? -1 : nodes[id].section_ids[0];
    }

    // Chain index of a node within a section, or -1.
    int chain_index(const Section& s, int node) const {
        auto c = s.chain();
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] == node) return static_cast<int>(i);
        return -1;
    }
};

// Single-source shortest distances (Dijkstra).
inline std::vector<double> dijkstra(const Roadmap& rm, int source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(rm.nodes.size(), inf);
    std::priority_queue<std::pair<double, int>,
                        std::vector<std::pair<double, int>>,
                        std::greater<>> pq;
    d[source] = 0;
    pq.push({0, source});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (auto [v, w] : rm.adj[u]) {
            if (du + w < d[v]) {
                d[v] = du + w;
                pq.push({d[v], v});
            }
        }
    }
    return d;
}

// Minimum-weight path a -> b; ties broken by the lexicographically smallest
// node-id sequence. The greedy walk over distances-to-target realizes the
// lexicographic rule because neighbors are scanned in ascending id order.
inline std::pair<std::vector<int>, double>
shortest_path_with_dist(const Roadmap& rm, int a, int b,
                        const std::vector<double>& dist_to_b) {
    const double inf = std::numeric_limits<double>::infinity();
    if (dist_to_b[a] == inf)
        throw Unreachable("no path between nodes " + std::to_string(a) +
                          " and " + std::to_string(b));
    double total = dist_to_b[a];
    std::vector<int> path{a};
    int u = a;
    double walked = 0;
    while (u != b) {
        int next = -1;
        double next_w = 0;
        for (auto [v, w] : rm.adj[u]) {
            double slack = (walked + w + dist_to_b[v]) - total;
            if (std::fabs(slack) <= 1e-9 * std::max(1.0, total) &&
                dist_to_b[v] < dist_to_b[u]) {
                next = v;
                next_w = w;
                break; // adj sorted by id: first hit is the smallest id
            }
        }
        if (next < 0) { // numeric fallback: follow steepest descent
            for (auto [v, w] : rm.adj[u])
                if (dist_to_b[v] + w <= dist_to_b[u] + 1e-9 &&
                    dist_to_b[v] < dist_to_b[u]) {
                    next = v;
                    next_w = w;
                    break;
                }
            if (next < 0)
                throw Unreachable("path reconstruction failed at node " +
                                  std::to_string(u));
        }
        walked += next_w;
        path.push_back(next);
        u = next;
    }
    return {path, total};
}

inline std::pair<std::vector<int>, double> shortest_path(const Roadmap& rm,
                                                         int a, int b) {
    if (a == b) return {{a}, 0.0};
    return shortest_path_with_dist(rm, a, b, dijkstra(rm, b));
}

inline int section_center(const Section& s) {
    auto c = s.chain();
    return c[(c.size() - 1) / 2];
}

inline nlohmann::ordered_json roadmap_to_json(const Roadmap& rm) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : rm.nodes)
        j["nodes"].push_back({{"id", n.id},
                              {"x", n.position.x},
                              {"y", n.position.y},
                              {"kind", n.kind == NodeKind::JC ? "JC" : "inner"}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : rm.edges)
        j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.weight}});
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : rm.sections)
        j["sections"].push_back(
            {{"id", s.id},
             {"jc", {s.jc_endpoints.first, s.jc_endpoints.second}},
             {"inner", s.inner_nodes},
             {"length", s.length},
             {"center", s.center_node}});
    return j;
}

} // namespace mrta
