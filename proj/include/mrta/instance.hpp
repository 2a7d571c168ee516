#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrta/errors.hpp"
#include "mrta/geometry.hpp"

namespace mrta {

using json = nlohmann::ordered_json;

struct Instance {
    Rect workspace;
    std::vector<Obstacle> obstacles;
    double robot_radius = 0.5;
    std::vector<Point> robots;
    std::vector<Point> tasks;
    // Dummy entities added to balance N and M; excluded from simulation.
    std::vector<bool> robot_is_dummy;
    std::vector<bool> task_is_dummy;

    int num_robots() const { return static_cast<int>(robots.size()); }
    int num_tasks() const { return static_cast<int>(tasks.size()); }
    int num_real_robots() const {
        int n = 0;
        for (size_t i = 0; i < robots.size(); ++i)
            if (!is_dummy_robot(static_cast<int>(i))) ++n;
        return n;
    }
    bool is_dummy_robot(int i) const {
        return i < static_cast<int>(robot_is_dummy.size()) && robot_is_dummy[i];
    }
    bool is_dummy_task(int j) const {
        return j < static_cast<int>(task_is_dummy.size()) && task_is_dummy[j];
    }
};

// Round to at most 12 significant digits so serialized numbers are stable.
inline double round_sig(double v) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    double mag = std::pow(10.0, 11 - std::floor(std::log10(std::fabs(v))));
    return std::round(v * mag) / mag;
}

inline std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    const double r = inst.robot_radius;
    if (!(r > 0)) out.push_back("robot_radius must be positive");
    if (inst.workspace.width() <= 0 || inst.workspace.height() <= 0)
        out.push_back("workspace must have positive extent");
    for (size_t k = 0; k < inst.obstacles.size(); ++k) {
        const auto& v = inst.obstacles[k].vertices;
        std::string tag = "obstacle " + std::to_string(k);
        if (v.size() < 3) {
            out.push_back(tag + ": fewer than 3 vertices");
            continue;
        }
        if (std::fabs(signed_area(v)) <= kGeoEps)
            out.push_back(tag + ": zero area");
        size_t n = v.size();
        for (size_t i = 0; i < n && out.size() < 100; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                // Skip adjacent edges (they share a vertex by construction).
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_intersect(v[i], v[(i + 1) % n], v[j],
                                       v[(j + 1) % n])) {
                    out.push_back(tag + ": self-intersecting");
                    i = n;
                    break;
                }
            }
    }
    auto check_entity = [&](Point p, const std::string& what, bool dummy) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            out.push_back(what + ": non-finite coordinates");
        if (dummy) return; // dummies are co-located with real entities
        if (!inst.workspace.contains(p))
            out.push_back(what + ": outside workspace");
        else if (clearance(p, inst.obstacles, inst.workspace) < r - kGeoEps)
            out.push_back(what + ": clearance below robot radius");
    };
    for (int i = 0; i < inst.num_robots(); ++i)
        check_entity(inst.robots[i], "robot " + std::to_string(i),
                     inst.is_dummy_robot(i));
    for (int j = 0; j < inst.num_tasks(); ++j)
        check_entity(inst.tasks[j], "task " + std::to_string(j),
                     inst.is_dummy_task(j));
    for (int i = 0; i < inst.num_robots(); ++i)
        for (int j = i + 1; j < inst.num_robots(); ++j)
            if (!inst.is_dummy_robot(i) && !inst.is_dummy_robot(j) &&
                dist(inst.robots[i], inst.robots[j]) <= kGeoEps)
                out.push_back("duplicate robot position (robots " +
                              std::to_string(i) + "," + std::to_string(j) + ")");
    for (int i = 0; i < inst.num_tasks(); ++i)
        for (int j = i + 1; j < inst.num_tasks(); ++j)
            if (!inst.is_dummy_task(i) && !inst.is_dummy_task(j) &&
                dist(inst.tasks[i], inst.tasks[j]) <= kGeoEps)
                out.push_back("duplicate task position (tasks " +
                              std::to_string(i) + "," + std::to_string(j) + ")");
    return out;
}

/// Balance N and M with flagged dummies: a dummy robot sits on an unmatched
// task (zero-cost self assignment) and a dummy task on an unmatched robot.
inline void pad_dummies(Instance& inst) {
    inst.robot_is_dummy.assign(inst.robots.size(), false);
    inst.task_is_dummy.assign(inst.tasks.size(), false);
    int n = inst.num_robots(), m = inst.num_tasks();
    for (int j = n; j < m; ++j) {
        inst.robots.push_back(inst.tasks[j]);
        inst.robot_is_dummy.push_back(true);
    }
    for (int i = m; i < n; ++i) {
        inst.tasks.push_back(inst.robots[i]);
        inst.task_is_dummy.push_back(true);
    }
}

inline json instance_to_json(const Instance& inst) {
    json j;
    j["workspace"] = {{"xmin", round_sig(inst.workspace.xmin)},
                      {"ymin", round_sig(inst.workspace.ymin)},
                      {"xmax", round_sig(inst.workspace.xmax)},
                      {"ymax", round_sig(inst.workspace.ymax)}};
    j["robot_radius"] = round_sig(inst.robot_radius);
    j["obstacles"] = json::array();
    for (const auto& ob : inst.obstacles) {
        json verts = json::array();
        for (auto p : ob.vertices)
            verts.push_back({round_sig(p.x), round_sig(p.y)});
        j["obstacles"].push_back({{"vertices", verts}});
    }
    j["robots"] = json::array();
    for (int i = 0; i < inst.num_robots(); ++i)
        if (!inst.is_dummy_robot(i))
            j["robots"].push_back(
                {round_sig(inst.robots[i].x), round_sig(inst.robots[i].y)});
    j["tasks"] = json::array();
    for (int i = 0; i < inst.num_tasks(); ++i)
        if (!inst.is_dummy_task(i))
            j["tasks"].push_back(
                {round_sig(inst.tasks[i].x), round_sig(inst.tasks[i].y)});
    return j;
}

inline Instance instance_from_json(const json& j) {
    Instance inst;
    try {
        inst.workspace.xmin = j.at("workspace").at("xmin").get<double>();
        inst.workspace.ymin = j.at("workspace").at("ymin").get<double>();
        inst.workspace.xmax = j.at("workspace").at("xmax").get<double>();
        inst.workspace.ymax = j.at("workspace").at("ymax").get<double>();
        inst.robot_radius = j.at("robot_radius").get<double>();
        for (const auto& ob : j.at("obstacles")) {
            Obstacle o;
            for (const auto& v : ob.at("vertices"))
                o.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
            inst.obstacles.push_back(std::move(o));
        }
        for (const auto& p : j.at("robots"))
            inst.robots.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        for (const auto& p : j.at("tasks"))
            inst.tasks.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad instance schema: ") + e.what());
    }
    return inst;
}

inline Instance load_instance_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    Instance inst = instance_from_json(j);
    auto violations = validate_instance(inst);
    if (!violations.empty()) throw ValidationError(violations.front());
    pad_dummies(inst);
    return inst;
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_instance_from_string(ss.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    out << instance_to_json(inst).dump(2) << "\n";
}

} // namespace mrta
