#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mrta/demand_supply.hpp"
#include "mrta/errors.hpp"
#include "mrta/revision.hpp"
#include "mrta/roadmap.hpp"

namespace mrta {

enum class Category { C1, C2, C3, C4 };

inline std::map<int, Category> categorize(const RevisedPlan& plan,
                                          const Roadmap& rm) {
    std::set<int> outs, ins;
    for (const auto& f : plan.flows) {
        outs.insert(f.start);
        ins.insert(f.end);
    }
    std::map<int, Category> cat;
    for (const auto& s : rm.sections) {
        bool o = outs.count(s.id), i = ins.count(s.id);
        cat[s.id] = o ? (i ? Category::C4 : Category::C2)
                      : (i ? Category::C3 : Category::C1);
    }
    return cat;
}

// Phases: C2->C4, C2->C3, C4->C4 (a C4 start becomes eligible once all of
// its inbound flows are scheduled), C4->C3. Within a phase flows run in
// (start, end) order. If the C4 dependency graph is cyclic, any flow whose
// start currently holds enough robots runs next; if none does, the cycle is
// unbreakable.
inline std::vector<Flow>
order_flows(const RevisedPlan& plan, const std::map<int, Category>& cat,
            const std::map<int, int>& robots_per_section) {
    std::vector<Flow> c2c4, c2c3, c4c4, c4c3;
    for (const auto& f : plan.flows) {
        Category cs = cat.at(f.start), ce = cat.at(f.end);
        if (cs == Category::C2 && ce == Category::C4)
            c2c4.push_back(f);
        else if (cs == Category::C2 && ce == Category::C3)
            c2c3.push_back(f);
        else if (cs == Category::C4 && ce == Category::C4)
            c4c4.push_back(f);
        else if (cs == Category::C4 && ce == Category::C3)
            c4c3.push_back(f);
        else
            throw CyclicDependency("flow with impossible categories " +
                                   std::to_string(f.start) + "->" +
                                   std::to_string(f.end));
    }
    for (auto* v : {&c2c4, &c2c3, &c4c4, &c4c3})
        std::sort(v->begin(), v->end());

    std::vector<Flow> ordered = c2c4;
    ordered.insert(ordered.end(), c2c3.begin(), c2c3.end());

    // C4->C4 with readiness: all inbound C4 flows of the start already run.
    std::map<int, int> pending_in; // C4 section -> unscheduled inbound count
    for (const auto& f : c4c4) pending_in[f.end] += 1;
    std::map<int, int> count = robots_per_section;
    for (const auto& f : ordered) {
        count[f.start] -= f.count;
        count[f.end] += f.count;
    }
    std::vector<char> done(c4c4.size(), false);
    for (size_t executed = 0; executed < c4c4.size();) {
        int pick = -1;
        for (size_t k = 0; k < c4c4.size(); ++k)
            if (!done[k] && pending_in[c4c4[k].start] == 0) {
                pick = static_cast<int>(k);
                break;
            }
        if (pick < 0) // cycle: fall back to roster coverage
            for (size_t k = 0; k < c4c4.size(); ++k)
                if (!done[k] && count[c4c4[k].start] >= c4c4[k].count) {
                    pick = static_cast<int>(k);
                    break;
                }
        if (pick < 0)
            throw CyclicDependency("unbreakable C4->C4 flow cycle");
        const Flow& f = c4c4[pick];
        done[pick] = true;
        ++executed;
        pending_in[f.end] -= 1;
        count[f.start] -= f.count;
        count[f.end] += f.count;
        ordered.push_back(f);
    }
    ordered.insert(ordered.end(), c4c3.begin(), c4c3.end());
    return ordered;
}

struct RobotItinerary {
    int robot = -1;
    int origin_section = -1;
    // (section, entering JC node); the first hop is (origin, -1).
    std::vector<std::pair<int, int>> hops;
    // Roadmap nodes from the robot's nearest node up to the entering JC of
    // its final section (just the nearest node for robots never moved).
    std::vector<int> waypoints;
    double traveled = 0; // off-roadmap start leg + roadmap arcs

    bool transferred() const { return hops.size() > 1; }
    int final_section() const { return hops.back().first; }
    int entering_jc() const { return hops.back().second; }
};

struct ArrivalEntry {
    int robot = -1;
    int entering_jc = -1;
    double distance = 0;
};

// Per receiving section, robots that arrived (and stayed), ascending by
// estimated arrival distance with ties by robot id.
struct ArrivalLedger {
    std::map<int, std::vector<ArrivalEntry>> by_section;
};

namespace detail {

// Node chain of a section between two chain indices, walking the section.
inline std::vector<int> section_subchain(const Section& s, int from_idx,
                                         int to_idx) {
    auto c = s.chain();
    std::vector<int> out;
    int step = to_idx >= from_idx ? 1 : -1;
    for (int k = from_idx; k != to_idx + step; k += step) out.push_back(c[k]);
    return out;
}

inline int shared_jc(const Section& a, const Section& b) {
    std::vector<int> cand;
    for (int x : {a.jc_endpoints.first, a.jc_endpoints.second})
        for (int y : {b.jc_endpoints.first, b.jc_endpoints.second})
            if (x == y) cand.push_back(x);
    if (cand.empty()) return -1;
    return *std::min_element(cand.begin(), cand.end());
}

} // namespace detail

inline std::pair<std::vector<RobotItinerary>, ArrivalLedger>
execute_flows(const std::vector<Flow>& ordered, const SectionAssociation& assoc,
              const Instance& inst, const Roadmap& rm) {
    std::map<int, RobotItinerary> itin;
    std::map<int, std::vector<int>> natives;           // section -> robot ids
    std::map<int, std::vector<ArrivalEntry>> received; // section -> arrivals

    for (const auto& [sid, robots] : assoc.robots_by_section) {
        natives[sid] = robots;
        for (int rid : robots) {
            RobotItinerary it;
            it.robot = rid;
            it.origin_section = sid;
            it.hops = {{sid, -1}};
            it.waypoints = {assoc.robot_nearest.at(rid)};
            itin[rid] = std::move(it);
        }
    }

    for (const auto& f : ordered) {
        const Section& sa = rm.sections[f.start];
        const Section& sb = rm.sections[f.end];
        int exit_jc = detail::shared_jc(sa, sb);
        if (exit_jc < 0)
            throw CyclicDependency("flow between non-adjacent sections " +
                                   std::to_string(f.start) + "->" +
                                   std::to_string(f.end));
        int exit_idx = sa.jc_endpoints.first == exit_jc ? 0 : sa.node_count() - 1;

        // Natives closest to the exit go first, then received robots in
        // arrival order.
        struct Cand {
            int tier;   // 0 native, 1 received
            double key; // arc distance to exit / arrival distance
            int robot;
            bool operator<(const Cand& o) const {
                return std::tie(tier, key, robot) < std::tie(o.tier, o.key, o.robot);
            }
        };
        std::vector<Cand> cands;
        for (int rid : natives[f.start]) {
            int idx = rm.chain_index(sa, assoc.robot_nearest.at(rid));
            cands.push_back(
                {0, std::fabs(sa.arc_pos(idx) - sa.arc_pos(exit_idx)), rid});
        }
        for (const auto& e : received[f.start])
            cands.push_back({1, e.distance, e.robot});
        std::sort(cands.begin(), cands.end());
        if (static_cast<int>(cands.size()) < f.count)
            throw InsufficientRobots(
                "section " + std::to_string(f.start) + " holds " +
                std::to_string(cands.size()) + " robots but owes " +
                std::to_string(f.count));

        for (int k = 0; k < f.count; ++k) {
            const Cand& c = cands[k];
            RobotItinerary& it = itin[c.robot];
            if (c.tier == 0) {
                // First departure pays the off-roadmap start leg.
                int node = assoc.robot_nearest.at(c.robot);
                int idx = rm.chain_index(sa, node);
                it.traveled = dist(inst.robots[c.robot], rm.nodes[node].position) +
                              std::fabs(sa.arc_pos(idx) - sa.arc_pos(exit_idx));
                auto seg = detail::section_subchain(sa, idx, exit_idx);
                it.waypoints.insert(it.waypoints.end(), seg.begin() + 1,
                                    seg.end());
                auto& vec = natives[f.start];
                vec.erase(std::find(vec.begin(), vec.end(), c.robot));
            } else {
                int in_idx =
                    sa.jc_endpoints.first == it.entering_jc() ? 0
                                                              : sa.node_count() - 1;
                it.traveled += std::fabs(sa.arc_pos(in_idx) - sa.arc_pos(exit_idx));
                auto seg = detail::section_subchain(sa, in_idx, exit_idx);
                it.waypoints.insert(it.waypoints.end(), seg.begin() + 1,
                                    seg.end());
                auto& vec = received[f.start];
                vec.erase(std::find_if(vec.begin(), vec.end(),
                                       [&](const ArrivalEntry& e) {
                                           return e.robot == c.robot;
                                       }));
            }
            it.hops.push_back({f.end, exit_jc});
            ArrivalEntry arr{c.robot, exit_jc, it.traveled};
            auto& rv = received[f.end];
            rv.insert(std::upper_bound(rv.begin(), rv.end(), arr,
                                       [](const ArrivalEntry& a,
                                          const ArrivalEntry& b) {
                                           return std::tie(a.distance, a.robot) <
                                                  std::tie(b.distance, b.robot);
                                       }),
                      arr);
        }
    }

    ArrivalLedger ledger;
    for (auto& [sid, v] : received)
        if (!v.empty()) ledger.by_section[sid] = std::move(v);
    std::vector<RobotItinerary> out;
    out.reserve(itin.size());
    for (auto& [rid, it] : itin) out.push_back(std::move(it));
    return {out, ledger};
}

} // namespace mrta
