#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mrta/demand_supply.hpp"
#include "mrta/errors.hpp"
#include "mrta/hungarian.hpp"
#include "mrta/roadmap.hpp"

namespace mrta {

// One row per surplus robot unit, one column per deficit unit; the cost of a
// slot pair is the center-to-center path length of its section pair.
struct CostMatrix {
    std::vector<std::pair<int, int>> row_slots; // (oversupplied section, slot)
    std::vector<std::pair<int, int>> col_slots; // (undersupplied section, slot)
    std::vector<std::vector<double>> cost;
};

struct PathCache {
    // (oversupplied, undersupplied) -> center-to-center node path and length
    std::map<std::pair<int, int>, std::pair<std::vector<int>, double>> paths;
};

struct Flow {
    int start = -1;
    int end = -1;
    int count = 0;
    auto operator<=>(const Flow&) const = default;
};

struct InitialPlan {
    std::vector<Flow> flows;
};

inline std::pair<CostMatrix, PathCache>
build_cost_matrix(const DemandReport& report, const Roadmap& rm) {
    const double inf = std::numeric_limits<double>::infinity();
    CostMatrix cm;
    PathCache cache;
    for (int sid : report.oversupplied)
        for (int k = 0; k < report.balance.at(sid); ++k)
            cm.row_slots.push_back({sid, k});
    for (int sid : report.undersupplied)
        for (int k = 0; k < -report.balance.at(sid); ++k)
            cm.col_slots.push_back({sid, k});
    if (cm.row_slots.size() != cm.col_slots.size())
        throw CountMismatch("oversupply total != undersupply total");

    std::map<std::pair<int, int>, double> pair_cost;
    for (int j : report.undersupplied) {
        int cj = rm.sections[j].center_node;
        auto dist_to_j = dijkstra(rm, cj);
        for (int i : report.oversupplied) {
            int ci = rm.sections[i].center_node;
            if (dist_to_j[ci] == inf) {
                pair_cost[{i, j}] = inf;
                continue;
            }
            auto [path, len] = shortest_path_with_dist(rm, ci, cj, dist_to_j);
            cache.paths[{i, j}] = {path, len};
            pair_cost[{i, j}] = len;
        }
    }
    for (int j : report.undersupplied) {
        bool reachable = false;
        for (int i : report.oversupplied)
            if (pair_cost[{i, j}] < inf) reachable = true;
        if (!reachable && !report.oversupplied.empty())
            throw Unreachable("undersupplied section " + std::to_string(j) +
                              " is in a component with no surplus robots");
    }
    cm.cost.assign(cm.row_slots.size(),
                   std::vector<double>(cm.col_slots.size(), 0));
    for (size_t r = 0; r < cm.row_slots.size(); ++r)
        for (size_t c = 0; c < cm.col_slots.size(); ++c)
            cm.cost[r][c] =
                pair_cost[{cm.row_slots[r].first, cm.col_slots[c].first}];
    return {cm, cache};
}

inline InitialPlan redistribution_planning(const std::vector<int>& row_to_col,
                                           const CostMatrix& cm) {
    std::map<std::pair<int, int>, int> counts;
    for (size_t r = 0; r < row_to_col.size(); ++r) {
        int i = cm.row_slots[r].first;
        int j = cm.col_slots[row_to_col[r]].first;
        if (!std::isfinite(cm.cost[r][row_to_col[r]]))
            throw Unreachable("assignment uses unreachable section pair " +
                              std::to_string(i) + "->" + std::to_string(j));
        counts[{i, j}] += 1;
    }
    InitialPlan plan;
    for (const auto& [key, n] : counts)
        plan.flows.push_back({key.first, key.second, n});
    return plan; // map iteration is already (start, end) sorted
}

// Full assignment stage: slot matrix, Hungarian, flow aggregation.
inline std::tuple<CostMatrix, PathCache, InitialPlan>
assignment_stage(const DemandReport& report, const Roadmap& rm) {
    auto [cm, cache] = build_cost_matrix(report, rm);
    std::vector<std::vector<double>> solve_cost = cm.cost;
    const double big = 1e12; // keeps the solver finite; checked afterwards
    for (auto& row : solve_cost)
        for (double& c : row)
            if (!std::isfinite(c)) c = big;
    auto perm = hungarian(solve_cost);
    return {cm, cache, redistribution_planning(perm, cm)};
}

} // namespace mrta
