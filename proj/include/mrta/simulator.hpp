#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrta/allocation.hpp"
#include "mrta/errors.hpp"

namespace mrta {

struct SimConfig {
    double speed = 1.0;
    double dt = 0.25;
    double conflict_radius = 1.0;
    long max_steps = 1000000;
    bool record_trace = true;
};

inline SimConfig default_sim_config(const FinalPlan& plan, double robot_radius) {
    SimConfig cfg;
    cfg.speed = 1.0;
    cfg.dt = robot_radius / (2.0 * cfg.speed);
    cfg.conflict_radius = 2.0 * robot_radius;
    double longest = 0;
    for (const auto& [r, len] : plan.lengths) longest = std::max(longest, len);
    cfg.max_steps =
        std::max<long>(100, std::lround(10.0 * longest / (cfg.speed * cfg.dt)));
    return cfg;
}

struct SimEvent {
    std::string type; // edge-swap | node-conflict | blocking | wait | done
    double time = 0;
    std::vector<int> robots;
    Point where;
};

struct SimTrace {
    std::vector<int> robot_ids;
    std::vector<std::vector<Point>> positions; // [step][robot index]
    std::vector<SimEvent> events;
};

struct Metrics {
    double makespan = 0;
    double sum_of_costs = 0;
    std::map<std::string, long> conflicts;
    bool deadlock = false;
    double completion_rate = 0;
};

namespace detail {

struct PathWalk {
    std::vector<Point> pts;
    std::vector<int> nodes; // node id per roadmap vertex, aligned to pts[1..]
    std::vector<double> cum;

    void init(const std::vector<Point>& p, const std::vector<int>& n) {
        pts = p;
        nodes = n;
        cum.assign(pts.size(), 0);
        for (size_t k = 1; k < pts.size(); ++k)
            cum[k] = cum[k - 1] + dist(pts[k - 1], pts[k]);
    }
    double total() const { return cum.back(); }
    Point at(double s) const {
        if (s <= 0) return pts.front();
        if (s >= total()) return pts.back();
        size_t k = std::upper_bound(cum.begin(), cum.end(), s) - cum.begin();
        double seg = cum[k] - cum[k - 1];
        double t = seg > 0 ? (s - cum[k - 1]) / seg : 0;
        return pts[k - 1] + (pts[k] - pts[k - 1]) * t;
    }
    // index of the vertex the robot is heading towards
    size_t next_vertex(double s) const {
        size_t k = std::upper_bound(cum.begin(), cum.end(), s + 1e-12) -
                   cum.begin();
        return std::min(k, pts.size() - 1);
    }
    // roadmap edge the point at arc s is travelling on, or (-1,-1)
    std::pair<int, int> current_edge(double s) const {
        size_t k = next_vertex(s);
        if (k < 2 || k >= nodes.size() + 1) return {-1, -1};
        return {nodes[k - 2], nodes[k - 1]};
    }
};

} // namespace detail

inline std::pair<SimTrace, Metrics> simulate(const FinalPlan& plan,
                                             const Roadmap&,
                                             const SimConfig& cfg) {
    std::vector<int> ids;
    for (const auto& [r, p] : plan.paths) ids.push_back(r);
    size_t n = ids.size();

    std::vector<detail::PathWalk> walk(n);
    std::vector<double> prog(n, 0), done_at(n, -1);
    for (size_t i = 0; i < n; ++i)
        walk[i].init(plan.paths.at(ids[i]), plan.node_paths.at(ids[i]));

    SimTrace trace;
    trace.robot_ids = ids;
    Metrics m;

    std::vector<Point> pos(n);
    for (size_t i = 0; i < n; ++i) {
        pos[i] = walk[i].pts.front();
        if (walk[i].total() <= 1e-12) {
            done_at[i] = 0;
            trace.events.push_back({"done", 0.0, {ids[i]}, pos[i]});
        }
    }

    long step = 0;
    double stride = cfg.speed * cfg.dt;
    std::vector<char> advanced_prev(n, 1);
    while (true) {
        if (cfg.record_trace) trace.positions.push_back(pos);
        bool all_done = true;
        for (size_t i = 0; i < n; ++i)
            if (done_at[i] < 0) all_done = false;
        if (all_done) break;
        if (step >= cfg.max_steps)
            throw StepLimit("no completion after " + std::to_string(step) +
                            " steps");

        double now = step * cfg.dt;
        bool progress = false;
        std::vector<char> advanced_now(n, 0);
        for (size_t i = 0; i < n; ++i) {
            if (done_at[i] >= 0) continue;
            size_t nv = walk[i].next_vertex(prog[i]);
            Point target = walk[i].pts[nv];
            auto edge = walk[i].current_edge(prog[i]);

            std::string why;
            bool brushed_parked = false;
            for (size_t j = 0; j < n && why.empty(); ++j) {
                if (j == i) continue;
                if (done_at[j] >= 0) {
                    // docked robots are off the roadmap; squeezing past one
                    // is a countable scrape, not a reason to stop
                    if (dist(pos[j], target) < cfg.conflict_radius / 2.0)
                        brushed_parked = true;
                    continue;
                }
                // yield at a contested node, but a stalled higher-id robot
                // does not hold up a lower-id one (breaks mutual waits)
                bool stalled = j < i ? !advanced_now[j] : !advanced_prev[j];
                if (dist(pos[j], target) < cfg.conflict_radius &&
                    (j < i || !stalled))
                    why = "node-conflict";
                auto oe = walk[j].current_edge(prog[j]);
                if (edge.first >= 0 && oe.first == edge.second &&
                    oe.second == edge.first)
                    why = "edge-swap";
            }
            if (!why.empty()) {
                m.conflicts[why] += 1;
                trace.events.push_back({why, now, {ids[i]}, target});
                continue;
            }
            if (brushed_parked) {
                m.conflicts["blocking"] += 1;
                trace.events.push_back({"blocking", now, {ids[i]}, target});
            }
            double before = prog[i];
            prog[i] = std::min(prog[i] + stride, walk[i].total());
            pos[i] = walk[i].at(prog[i]);
            if (prog[i] > before) {
                progress = true;
                advanced_now[i] = 1;
            }
            if (prog[i] >= walk[i].total() - 1e-12) {
                done_at[i] = now + (walk[i].total() - before) / cfg.speed;
                trace.events.push_back({"done", done_at[i], {ids[i]}, pos[i]});
            }
        }
        if (!progress) {
            m.deadlock = true;
            break;
        }
        advanced_prev = advanced_now;
        ++step;
    }

    size_t completed = 0;
    for (size_t i = 0; i < n; ++i)
        if (done_at[i] >= 0) {
            ++completed;
            m.makespan = std::max(m.makespan, done_at[i]);
            m.sum_of_costs += done_at[i];
        }
    m.completion_rate = n ? static_cast<double>(completed) / n : 1.0;
    return {std::move(trace), m};
}

// edges of the roadmap used in both directions across all planned paths
inline std::vector<std::pair<int, int>> check_property1(const FinalPlan& plan) {
    std::set<std::pair<int, int>> used;
    for (const auto& [r, nodes] : plan.node_paths)
        for (size_t k = 1; k < nodes.size(); ++k)
            used.insert({nodes[k - 1], nodes[k]});
    std::vector<std::pair<int, int>> bad;
    for (const auto& e : used)
        if (e.first < e.second && used.count({e.second, e.first}))
            bad.push_back(e);
    return bad;
}

struct BlockingIncident {
    int parked = -1, traveller = -1, node = -1;
};

// robot i docks next to its last roadmap node; if it physically occupies
// that node and the node sits in the interior of robot j's path, j must
// pass it strictly before i settles there
inline std::vector<BlockingIncident> check_property2(const FinalPlan& plan,
                                                     const SimConfig& cfg) {
    std::vector<BlockingIncident> out;
    for (const auto& [ri, ni] : plan.node_paths) {
        if (ni.empty()) continue;
        int dest = ni.back();
        const auto& ipts = plan.paths.at(ri);
        if (dist(ipts.back(), ipts[ipts.size() - 2]) >=
            cfg.conflict_radius / 2.0)
            continue; // parks clear of the roadmap node
        // time to settle at the destination node (the short hop to the
        // task itself does not matter for blocking)
        double ti = (plan.lengths.at(ri) -
                     dist(ipts[ipts.size() - 2], ipts.back())) /
                    cfg.speed;
        for (const auto& [rj, nj] : plan.node_paths) {
            if (rj == ri) continue;
            const auto& pts = plan.paths.at(rj);
            // pts = start, nodes..., task; node k-1 sits at pts[k]
            double acc = dist(pts[0], pts[1]);
            for (size_t k = 1; k < nj.size(); ++k) {
                if (nj[k - 1] == dest) {
                    double tj = acc / cfg.speed;
                    if (!(tj < ti)) out.push_back({ri, rj, dest});
                }
                acc += dist(pts[k], pts[k + 1]);
            }
        }
    }
    return out;
}

struct JcViolation {
    int jc = -1;
    int a = -1, b = -1; // sections crossed in both orders
};

inline std::vector<JcViolation>
check_jc_direction(const std::vector<RobotItinerary>& itineraries) {
    std::map<int, std::set<std::pair<int, int>>> crossings;
    for (const auto& it : itineraries)
        for (size_t h = 1; h < it.hops.size(); ++h)
            crossings[it.hops[h].second].insert(
                {it.hops[h - 1].first, it.hops[h].first});
    std::vector<JcViolation> out;
    for (const auto& [jc, dirs] : crossings)
        for (const auto& d : dirs)
            if (d.first < d.second && dirs.count({d.second, d.first}))
                out.push_back({jc, d.first, d.second});
    return out;
}

inline std::string trace_to_csv(const SimTrace& trace) {
    std::ostringstream os;
    os << "step,robot,x,y,state\n";
    for (size_t s = 0; s < trace.positions.size(); ++s)
        for (size_t i = 0; i < trace.robot_ids.size(); ++i) {
            const Point& p = trace.positions[s][i];
            bool moved = s + 1 < trace.positions.size() &&
                         dist(trace.positions[s + 1][i], p) > 1e-12;
            os << s << ',' << trace.robot_ids[i] << ',' << round_sig(p.x) << ','
               << round_sig(p.y) << ',' << (moved ? "moving" : "idle") << '\n';
        }
    return os.str();
}

inline json events_to_json(const SimTrace& trace) {
    json arr = json::array();
    for (const auto& e : trace.events) {
        json j;
        j["type"] = e.type;
        j["time"] = round_sig(e.time);
        j["robots"] = e.robots;
        j["where"] = {round_sig(e.where.x), round_sig(e.where.y)};
        arr.push_back(std::move(j));
    }
    return arr;
}

inline json metrics_to_json(const Metrics& m) {
    json j;
    j["makespan"] = round_sig(m.makespan);
    j["sum_of_costs"] = round_sig(m.sum_of_costs);
    j["conflicts"] = json::object();
    for (const auto& [k, v] : m.conflicts) j["conflicts"][k] = v;
    j["deadlock"] = m.deadlock;
    j["completion_rate"] = round_sig(m.completion_rate);
    return j;
}

} // namespace mrta
