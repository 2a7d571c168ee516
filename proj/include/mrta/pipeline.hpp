#pragma once

#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mrta/allocation.hpp"
#include "mrta/assignment.hpp"
#include "mrta/baselines.hpp"
#include "mrta/gvd.hpp"
#include "mrta/revision.hpp"
#include "mrta/scheduler.hpp"

namespace mrta {

struct PlanResult {
    Roadmap roadmap;
    SectionAssociation assoc;
    DemandReport report;
    CostMatrix costs;
    InitialPlan init;
    RevisedPlan revised;
    std::map<int, Category> categories;
    std::vector<Flow> ordered;
    std::vector<RobotItinerary> itineraries;
    ArrivalLedger ledger;
    FinalPlan plan;
    std::map<std::string, double> timings_ms;
};

namespace detail {

struct StageClock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double lap() {
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        t0 = t1;
        return ms;
    }
};

} // namespace detail

inline PlanResult plan_redistribution(const Instance& inst,
                                      const RoadmapOptions& opt = {}) {
    PlanResult r;
    detail::StageClock clock;
    r.roadmap = gen_roadmap(inst, opt);
    r.timings_ms["roadmap"] = clock.lap();

    r.assoc = associate(inst, r.roadmap);
    r.report = analyze(r.assoc, r.roadmap);
    r.timings_ms["analysis"] = clock.lap();

    auto [costs, cache, init] = assignment_stage(r.report, r.roadmap);
    r.costs = std::move(costs);
    r.init = std::move(init);
    r.timings_ms["assignment"] = clock.lap();

    r.revised = revise(r.init, cache, r.roadmap);
    r.timings_ms["revision"] = clock.lap();

    r.categories = categorize(r.revised, r.roadmap);
    r.ordered = order_flows(r.revised, r.categories, r.report.robots_per_section);
    auto [itins, ledger] = execute_flows(r.ordered, r.assoc, inst, r.roadmap);
    r.itineraries = std::move(itins);
    r.ledger = std::move(ledger);
    r.timings_ms["scheduling"] = clock.lap();

    r.plan = build_final_plan(r.itineraries, r.ledger, r.assoc, inst, r.roadmap);
    r.timings_ms["allocation"] = clock.lap();
    return r;
}

inline PlanResult plan_with_algo(const Instance& inst, const std::string& algo,
                                 const RoadmapOptions& opt = {}) {
    if (algo == "rm") return plan_redistribution(inst, opt);
    PlanResult r;
    detail::StageClock clock;
    r.roadmap = gen_roadmap(inst, opt);
    r.timings_ms["roadmap"] = clock.lap();
    if (algo == "hungarian-euclid")
        r.plan = hungarian_euclidean(inst, r.roadmap);
    else if (algo == "hungarian-roadmap")
        r.plan = hungarian_roadmap(inst, r.roadmap);
    else if (algo == "greedy")
        r.plan = greedy_nearest(inst, r.roadmap);
    else
        throw ValidationError("unknown algorithm: " + algo);
    r.timings_ms["allocation"] = clock.lap();
    return r;
}

inline std::string cost_matrix_to_csv(const CostMatrix& cm) {
    std::ostringstream os;
    os << "slot";
    for (const auto& [sec, slot] : cm.col_slots)
        os << ",s" << sec << "#" << slot;
    os << "\n";
    for (size_t i = 0; i < cm.row_slots.size(); ++i) {
        os << "s" << cm.row_slots[i].first << "#" << cm.row_slots[i].second;
        for (size_t j = 0; j < cm.col_slots.size(); ++j) {
            double c = cm.cost[i][j];
            if (c == std::numeric_limits<double>::infinity())
                os << ",inf";
            else
                os << "," << round_sig(c);
        }
        os << "\n";
    }
    return os.str();
}

inline json flows_to_json(const InitialPlan& init, const RevisedPlan& revised) {
    json j;
    j["X_init"] = json::array();
    for (const auto& f : init.flows)
        j["X_init"].push_back({f.start, f.end, f.count});
    j["X"] = json::array();
    for (const auto& f : revised.flows)
        j["X"].push_back({f.start, f.end, f.count});
    return j;
}

inline json itineraries_to_json(const std::vector<RobotItinerary>& itins) {
    json arr = json::array();
    for (const auto& it : itins) {
        json j;
        j["robot"] = it.robot;
        j["origin_section"] = it.origin_section;
        j["hops"] = json::array();
        for (const auto& [sec, jc] : it.hops) j["hops"].push_back({sec, jc});
        j["waypoints"] = it.waypoints;
        j["traveled"] = round_sig(it.traveled);
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace mrta
