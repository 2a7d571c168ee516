#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "mrta/roadmap.hpp"

namespace testutil {

// Straight chain of sections along the x axis: JC nodes 0..S at x = 0, L,
// 2L, ..., section k between JC k and k+1 with the requested inner node
// count. Geometry is 1-D but fully consistent with the section invariants.
inline mrta::Roadmap make_line_roadmap(const std::vector<int>& inner_counts,
                                       double section_len = 10.0) {
    mrta::Roadmap rm;
    int S = static_cast<int>(inner_counts.size());
    for (int j = 0; j <= S; ++j) {
        rm.nodes.push_back({j, {section_len * j, 0.0}, mrta::NodeKind::JC, {}});
        rm.jc_ids.push_back(j);
    }
    for (int k = 0; k < S; ++k) {
        mrta::Section sec;
        sec.id = k;
        sec.jc_endpoints = {k, k + 1};
        sec.length = section_len;
        int n = inner_counts[k] + 2;
        double spacing = section_len / (n - 1);
        int prev = k;
        for (int t = 1; t < n - 1; ++t) {
            int id = static_cast<int>(rm.nodes.size());
            rm.nodes.push_back({id,
                                {section_len * k + spacing * t, 0.0},
                                mrta::NodeKind::Inner,
                                {k}});
            sec.inner_nodes.push_back(id);
            rm.edges.push_back({prev, id, spacing});
            prev = id;
        }
        rm.edges.push_back({prev, k + 1, spacing});
        rm.nodes[k].section_ids.push_back(k);
        rm.nodes[k + 1].section_ids.push_back(k);
        sec.center_node = mrta::section_center(sec);
        rm.sections.push_back(std::move(sec));
    }
    rm.build_adjacency();
    return rm;
}

// Exhaustive simple-path search, the oracle for Dijkstra and the
// lexicographic tie rule.
inline std::pair<std::vector<int>, double>
brute_shortest_path(const mrta::Roadmap& rm, int a, int b) {
    std::vector<int> best;
    double best_len = std::numeric_limits<double>::infinity();
    std::vector<int> path{a};
    std::vector<bool> onpath(rm.nodes.size(), false);
    onpath[a] = true;
    auto consider = [&](const std::vector<int>& cand, double len) {
        if (len < best_len - 1e-12 ||
            (std::fabs(len - best_len) <= 1e-12 && cand < best)) {
            best = cand;
            best_len = len;
        }
    };
    std::function<void(int, double)> dfs = [&](int u, double len) {
        if (len >= best_len + 1e-12) return;
        if (u == b) {
            consider(path, len);
            return;
        }
        for (auto [v, w] : rm.adj[u]) {
            if (onpath[v]) continue;
            onpath[v] = true;
            path.push_back(v);
            dfs(v, len + w);
            path.pop_back();
            onpath[v] = false;
        }
    };
    dfs(a, 0);
    return {best, best_len};
}

// Minimum assignment cost by trying every permutation (n <= 8).
inline double brute_assignment_cost(const std::vector<std::vector<double>>& c) {
    int n = static_cast<int>(c.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double t = 0;
        for (int i = 0; i < n; ++i) t += c[i][perm[i]];
        best = std::min(best, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Lexicographically smallest permutation among the optima.
inline std::vector<int>
brute_lex_optimum(const std::vector<std::vector<double>>& c, double eps) {
    int n = static_cast<int>(c.size());
    double best = brute_assignment_cost(c);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        double t = 0;
        for (int i = 0; i < n; ++i) t += c[i][perm[i]];
        if (t <= best + eps) return perm; // permutations come in lex order
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {};
}

} // namespace testutil
