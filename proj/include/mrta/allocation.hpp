#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mrta/errors.hpp"
#include "mrta/scheduler.hpp"

namespace mrta {

struct TaskAllocation {
    std::map<int, int> robot_to_task;
};

struct FinalPlan {
    TaskAllocation allocation;
    std::map<int, std::vector<Point>> paths;    // start ... task, straight legs
    std::map<int, std::vector<int>> node_paths; // roadmap nodes visited, in order
    std::map<int, double> lengths;              // Euclidean polyline length
};

inline std::map<int, double>
estimate_arrivals(const std::vector<RobotItinerary>& itineraries,
                  const ArrivalLedger&) {
    std::map<int, double> out;
    for (const auto& it : itineraries)
        out[it.robot] = it.transferred() ? it.traveled : 0.0;
    return out;
}

// Tasks come sorted by arc distance from the section's first JC endpoint.
// The first |left| tasks belong to the left side, the last |right| to the
// right side, inner robots take the middle. On each side the earliest
// arrival gets the task furthest from that side's JC node.
inline std::map<int, int>
allocate_section(const Section& s, const std::vector<int>& incoming_left,
                 const std::vector<int>& incoming_right,
                 const std::vector<int>& inner_robots,
                 const std::vector<int>& tasks) {
    size_t nl = incoming_left.size(), ni = inner_robots.size(),
           nr = incoming_right.size();
    if (nl + ni + nr != tasks.size())
        throw CountMismatch("section " + std::to_string(s.id) + ": " +
                            std::to_string(nl + ni + nr) + " robots vs " +
                            std::to_string(tasks.size()) + " tasks");
    std::map<int, int> out;
    for (size_t i = 0; i < nl; ++i) out[incoming_left[i]] = tasks[nl - 1 - i];
    for (size_t i = 0; i < ni; ++i) out[inner_robots[i]] = tasks[nl + i];
    for (size_t i = 0; i < nr; ++i) out[incoming_right[i]] = tasks[nl + ni + i];
    return out;
}

inline FinalPlan build_final_plan(const std::vector<RobotItinerary>& itineraries,
                                  const ArrivalLedger& ledger,
                                  const SectionAssociation& assoc,
                                  const Instance& inst, const Roadmap& rm) {
    std::map<int, const RobotItinerary*> by_robot;
    std::map<int, std::vector<int>> inner_by_section;
    for (const auto& it : itineraries) {
        by_robot[it.robot] = &it;
        if (!it.transferred()) inner_by_section[it.final_section()].push_back(it.robot);
    }

    TaskAllocation alloc;
    for (const auto& [sid, tasks_here] : assoc.tasks_by_section) {
        const Section& s = rm.sections[sid];

        // arc position from the first JC endpoint, ties by id
        auto arc_of_task = [&](int tid) {
            return s.arc_pos(rm.chain_index(s, assoc.task_nearest.at(tid)));
        };
        std::vector<int> tasks = tasks_here;
        std::sort(tasks.begin(), tasks.end(), [&](int a, int b) {
            return std::make_pair(arc_of_task(a), a) <
                   std::make_pair(arc_of_task(b), b);
        });

        std::vector<int> left, right;
        auto led = ledger.by_section.find(sid);
        if (led != ledger.by_section.end())
            for (const auto& e : led->second)
                (e.entering_jc == s.jc_endpoints.second &&
                 s.jc_endpoints.second != s.jc_endpoints.first
                     ? right
                     : left)
                    .push_back(e.robot);

        std::vector<int> inner = inner_by_section[sid];
        std::sort(inner.begin(), inner.end(), [&](int a, int b) {
            double pa = s.arc_pos(rm.chain_index(s, assoc.robot_nearest.at(a)));
            double pb = s.arc_pos(rm.chain_index(s, assoc.robot_nearest.at(b)));
            return std::make_pair(pa, a) < std::make_pair(pb, b);
        });

        for (auto [r, t] : allocate_section(s, left, right, inner, tasks))
            alloc.robot_to_task[r] = t;
    }

    // Sections holding robots but no tasks (or vice versa) mean the flows
    // did not balance demand.
    for (const auto& it : itineraries)
        if (!alloc.robot_to_task.count(it.robot))
            throw CountMismatch("robot " + std::to_string(it.robot) +
                                " ended in section " +
                                std::to_string(it.final_section()) +
                                " with no task left");

    FinalPlan plan;
    plan.allocation = alloc;
    for (const auto& [rid, tid] : alloc.robot_to_task) {
        const RobotItinerary& it = *by_robot.at(rid);
        const Section& s = rm.sections[it.final_section()];
        std::vector<int> nodes = it.waypoints;
        int from_idx = rm.chain_index(s, nodes.back());
        int to_idx = rm.chain_index(s, assoc.task_nearest.at(tid));
        auto seg = detail::section_subchain(s, from_idx, to_idx);
        nodes.insert(nodes.end(), seg.begin() + 1, seg.end());

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

inline json final_plan_to_json(const FinalPlan& plan) {
    json j;
    j["allocation"] = json::array();
    for (const auto& [r, t] : plan.allocation.robot_to_task)
        j["allocation"].push_back({r, t});
    j["paths"] = json::object();
    j["lengths"] = json::object();
    for (const auto& [r, pts] : plan.paths) {
        json arr = json::array();
        for (const auto& p : pts)
            arr.push_back({round_sig(p.x), round_sig(p.y)});
        j["paths"][std::to_string(r)] = std::move(arr);
        j["lengths"][std::to_string(r)] = round_sig(plan.lengths.at(r));
    }
    return j;
}

} // namespace mrta
