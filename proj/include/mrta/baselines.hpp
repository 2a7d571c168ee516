#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "mrta/allocation.hpp"
#include "mrta/demand_supply.hpp"
#include "mrta/hungarian.hpp"

namespace mrta {

namespace detail {

// Turn a bare robot->task assignment into roadmap-realized paths so the
// property checks and the simulator see the same kind of plan.
inline FinalPlan realize_assignment(const std::map<int, int>& r2t,
                                    const Instance& inst, const Roadmap& rm,
                                    const SectionAssociation& assoc) {
    FinalPlan plan;
    plan.allocation.robot_to_task = r2t;
    for (const auto& [rid, tid] : r2t) {
        int a = assoc.robot_nearest.at(rid);
        int b = assoc.task_nearest.at(tid);
        auto [nodes, d] = shortest_path(rm, a, b);
        std::vector<Point> pts;
        pts.push_back(inst.robots[rid]);
        for (int n : nodes) pts.push_back(rm.nodes[n].position);
        pts.push_back(inst.tasks[tid]);
        plan.node_paths[rid] = std::move(nodes);
        plan.lengths[rid] = polyline_length(pts);
        plan.paths[rid] = std::move(pts);
    }
    return plan;
}

} // namespace detail

inline FinalPlan hungarian_euclidean(const Instance& inst, const Roadmap& rm) {
    SectionAssociation assoc = associate(inst, rm);
    int n = inst.num_robots();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost[i][j] = dist(inst.robots[i], inst.tasks[j]);
    auto match = hungarian(cost);
    std::map<int, int> r2t;
    for (int i = 0; i < n; ++i) r2t[i] = match[i];
    return detail::realize_assignment(r2t, inst, rm, assoc);
}

namespace detail {

inline std::vector<std::vector<double>>
roadmap_cost_matrix(const Instance& inst, const Roadmap& rm,
                    const SectionAssociation& assoc) {
    int n = inst.num_robots();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        int a = assoc.robot_nearest.at(i);
        auto dsts = dijkstra(rm, a);
        double leg = dist(inst.robots[i], rm.nodes[a].position);
        for (int j = 0; j < n; ++j) {
            int b = assoc.task_nearest.at(j);
            if (dsts[b] == std::numeric_limits<double>::infinity())
                throw Unreachable("task " + std::to_string(j) +
                                  " unreachable from robot " +
                                  std::to_string(i));
            cost[i][j] = leg + dsts[b] + dist(rm.nodes[b].position, inst.tasks[j]);
        }
    }
    return cost;
}

} // namespace detail

inline FinalPlan hungarian_roadmap(const Instance& inst, const Roadmap& rm) {
    SectionAssociation assoc = associate(inst, rm);
    auto cost = detail::roadmap_cost_matrix(inst, rm, assoc);
    auto match = hungarian(cost);
    std::map<int, int> r2t;
    for (int i = 0; i < inst.num_robots(); ++i) r2t[i] = match[i];
    return detail::realize_assignment(r2t, inst, rm, assoc);
}

inline FinalPlan greedy_nearest(const Instance& inst, const Roadmap& rm) {
    SectionAssociation assoc = associate(inst, rm);
    auto cost = detail::roadmap_cost_matrix(inst, rm, assoc);
    int n = inst.num_robots();
    std::vector<char> claimed(n, false);
    std::map<int, int> r2t;
    for (int i = 0; i < n; ++i) {
        int best = -1;
        for (int j = 0; j < n; ++j)
            if (!claimed[j] && (best < 0 || cost[i][j] < cost[i][best]))
                best = j;
        claimed[best] = true;
        r2t[i] = best;
    }
    return detail::realize_assignment(r2t, inst, rm, assoc);
}

} // namespace mrta
