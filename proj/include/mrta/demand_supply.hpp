#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "mrta/errors.hpp"
#include "mrta/instance.hpp"
#include "mrta/roadmap.hpp"

namespace mrta {

struct SectionAssociation {
    std::map<int, int> robot_nearest; // robot id -> node id
    std::map<int, int> task_nearest;  // task id -> node id
    std::map<int, std::vector<int>> robots_by_section; // R_s, ordered
    std::map<int, std::vector<int>> tasks_by_section;  // T_s, ordered
};

struct DemandReport {
    std::map<int, int> robots_per_section; // N_s
    std::map<int, int> tasks_per_section;  // M_s
    std::map<int, int> balance;            // D_s = N_s - M_s
    std::vector<int> oversupplied;         // D_s > 0
    std::vector<int> undersupplied;        // D_s < 0
    std::vector<int> balanced;             // D_s = 0
};

// Closest visible non-JC node by Euclidean distance; JC nodes are excluded
// so the section membership is unique. Ties by lowest node id.
inline int nearest_node(Point p, const Roadmap& rm,
                        const std::vector<Obstacle>& obstacles) {
    std::vector<std::pair<double, int>> order;
    order.reserve(rm.nodes.size());
    for (const auto& n : rm.nodes)
        if (n.kind != NodeKind::JC)
            order.push_back({dist(p, n.position), n.id});
    std::sort(order.begin(), order.end());
    for (auto [d, id] : order)
        if (line_of_sight(p, rm.nodes[id].position, obstacles)) return id;
    throw NoVisibleNode("no non-JC roadmap node visible from (" +
                        std::to_string(p.x) + "," + std::to_string(p.y) + ")");
}

inline SectionAssociation associate(const Instance& inst, const Roadmap& rm) {
    SectionAssociation assoc;
    struct Entry {
        double arc;     // arc position of nearest node along its section
        double to_jc;   // Euclidean distance to the section's first JC
        int entity;
    };
    std::map<int, std::vector<Entry>> robot_entries, task_entries;

    auto place = [&](Point p, int entity, bool is_robot) {
        int node;
        try {
            node = nearest_node(p, rm, inst.obstacles);
        } catch (const NoVisibleNode&) {
            throw NoVisibleNode(std::string(is_robot ? "robot " : "task ") +
                                std::to_string(entity) +
                                " sees no non-JC roadmap node");
        }
        (is_robot ? assoc.robot_nearest : assoc.task_nearest)[entity] = node;
        int sid = rm.section_of_inner(node);
        const Section& sec = rm.sections[sid];
        int idx = rm.chain_index(sec, node);
        Point first_jc = rm.nodes[sec.jc_endpoints.first].position;
        Entry e{sec.arc_pos(idx), dist(p, first_jc), entity};
        (is_robot ? robot_entries : task_entries)[sid].push_back(e);
    };

    for (int i = 0; i < inst.num_robots(); ++i) place(inst.robots[i], i, true);
    for (int j = 0; j < inst.num_tasks(); ++j) place(inst.tasks[j], j, false);

    auto finish = [](std::map<int, std::vector<Entry>>& entries,
                     std::map<int, std::vector<int>>& out) {
        for (auto& [sid, v] : entries) {
            std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
                if (a.arc != b.arc) return a.arc < b.arc;
                if (a.to_jc != b.to_jc) return a.to_jc < b.to_jc;
                return a.entity < b.entity;
            });
            for (const auto& e : v) out[sid].push_back(e.entity);
        }
    };
    finish(robot_entries, assoc.robots_by_section);
    finish(task_entries, assoc.tasks_by_section);
    return assoc;
}

inline DemandReport analyze(const SectionAssociation& assoc,
                            const Roadmap& rm) {
    DemandReport rep;
    for (const auto& s : rm.sections) {
        auto rit = assoc.robots_by_section.find(s.id);
        auto tit = assoc.tasks_by_section.find(s.id);
        int ns = rit == assoc.robots_by_section.end()
                     ? 0
                     : static_cast<int>(rit->second.size());
        int ms = tit == assoc.tasks_by_section.end()
                     ? 0
                     : static_cast<int>(tit->second.size());
        rep.robots_per_section[s.id] = ns;
        rep.tasks_per_section[s.id] = ms;
        rep.balance[s.id] = ns - ms;
        if (ns > ms)
            rep.oversupplied.push_back(s.id);
        else if (ns < ms)
            rep.undersupplied.push_back(s.id);
        else
            rep.balanced.push_back(s.id);
    }
    return rep;
}

inline nlohmann::ordered_json demand_report_to_json(const DemandReport& rep) {
    nlohmann::ordered_json j;
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& [sid, ns] : rep.robots_per_section)
        j["sections"].push_back({{"id", sid},
                                 {"robots", ns},
                                 {"tasks", rep.tasks_per_section.at(sid)},
                                 {"balance", rep.balance.at(sid)}});
    j["oversupplied"] = rep.oversupplied;
    j["undersupplied"] = rep.undersupplied;
    j["balanced"] = rep.balanced;
    return j;
}

} // namespace mrta
