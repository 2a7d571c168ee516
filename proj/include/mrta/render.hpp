#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "mrta/allocation.hpp"
#include "mrta/assignment.hpp"
#include "mrta/instance.hpp"
#include "mrta/roadmap.hpp"

namespace mrta {

namespace detail {

inline std::string path_color(int i) {
    static const char* palette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                    "#911eb4", "#46f0f0", "#f032e6", "#bcf60c",
                                    "#008080", "#9a6324", "#800000", "#808000"};
    return palette[i % 12];
}

} // namespace detail

inline std::string render_svg(const Instance& inst, const Roadmap& rm,
                              const FinalPlan* plan = nullptr,
                              const std::vector<Flow>* flows = nullptr) {
    const Rect& w = inst.workspace;
    double scale = 10.0;
    std::ostringstream os;
    os.precision(3);
    os << std::fixed;
    auto X = [&](double x) { return (x - w.xmin) * scale; };
    auto Y = [&](double y) { return (w.ymax - y) * scale; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
       << (w.xmax - w.xmin) * scale << "\" height=\"" << (w.ymax - w.ymin) * scale
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";

    for (const auto& ob : inst.obstacles) {
        os << "<polygon fill=\"#555\" points=\"";
        for (const auto& p : ob.vertices) os << X(p.x) << "," << Y(p.y) << " ";
        os << "\"/>\n";
    }

    for (const auto& e : rm.edges)
        os << "<line x1=\"" << X(rm.nodes[e.u].position.x) << "\" y1=\""
           << Y(rm.nodes[e.u].position.y) << "\" x2=\""
           << X(rm.nodes[e.v].position.x) << "\" y2=\""
           << Y(rm.nodes[e.v].position.y)
           << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    for (const auto& nd : rm.nodes) {
        bool jc = nd.kind == NodeKind::JC;
        os << "<circle cx=\"" << X(nd.position.x) << "\" cy=\""
           << Y(nd.position.y) << "\" r=\"" << (jc ? 4 : 2) << "\" fill=\""
           << (jc ? "#d22" : "#999") << "\"/>\n";
    }

    if (flows)
        for (const auto& f : *flows) {
            Point a = rm.nodes[rm.sections[f.start].center_node].position;
            Point b = rm.nodes[rm.sections[f.end].center_node].position;
            os << "<line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\""
               << X(b.x) << "\" y2=\"" << Y(b.y)
               << "\" stroke=\"#06c\" stroke-width=\"3\" opacity=\"0.6\"/>\n";
            Point m = (a + b) * 0.5;
            os << "<text x=\"" << X(m.x) << "\" y=\"" << Y(m.y)
               << "\" font-size=\"14\" fill=\"#06c\">" << f.count << "</text>\n";
        }

    if (plan) {
        int k = 0;
        for (const auto& [rid, pts] : plan->paths) {
            os << "<polyline fill=\"none\" stroke=\"" << detail::path_color(k++)
               << "\" stroke-width=\"1.5\" opacity=\"0.8\" points=\"";
            for (const auto& p : pts) os << X(p.x) << "," << Y(p.y) << " ";
            os << "\"/>\n";
        }
    }

    for (size_t i = 0; i < inst.robots.size(); ++i)
        os << "<circle cx=\"" << X(inst.robots[i].x) << "\" cy=\""
           << Y(inst.robots[i].y) << "\" r=\"" << inst.robot_radius * scale
           << "\" fill=\"#2a2\" opacity=\"0.8\"/>\n";
    for (size_t j = 0; j < inst.tasks.size(); ++j)
        os << "<rect x=\"" << X(inst.tasks[j].x) - 3 << "\" y=\""
           << Y(inst.tasks[j].y) - 3
           << "\" width=\"6\" height=\"6\" fill=\"#a2a\"/>\n";

    os << "</svg>\n";
    return os.str();
}

} // namespace mrta
