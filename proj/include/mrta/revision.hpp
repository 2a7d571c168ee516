#pragma once

#include <map>
#include <vector>

#include "mrta/assignment.hpp"
#include "mrta/roadmap.hpp"

namespace mrta {

struct RevisedPlan {
    std::vector<Flow> flows; // adjacent-section hops, sorted (start, end)
};

// Ordered list of distinct sections traversed by a node path. Sections are
// recovered edge-wise so zero-inner sections crossed through two JC nodes
// still appear in the sequence.
inline std::vector<int> decompose(const std::vector<int>& path,
                                  const Roadmap& rm, int start_section = -1,
                                  int end_section = -1) {
    std::vector<int> seq;
    auto push = [&](int sid) {
        if (sid >= 0 && (seq.empty() || seq.back() != sid)) seq.push_back(sid);
    };
    if (path.size() == 1) {
        int n = path[0];
        push(rm.is_jc(n) ? start_section : rm.section_of_inner(n));
    }
    for (size_t k = 1; k < path.size(); ++k) {
        int u = path[k - 1], v = path[k];
        int sid = -1;
        if (!rm.is_jc(u))
            sid = rm.section_of_inner(u);
        else if (!rm.is_jc(v))
            sid = rm.section_of_inner(v);
        else {
            for (const auto& s : rm.sections)
                if (s.inner_nodes.empty() &&
                    ((s.jc_endpoints.first == u && s.jc_endpoints.second == v) ||
                     (s.jc_endpoints.first == v && s.jc_endpoints.second == u))) {
                    sid = s.id;
                    break;
                }
        }
        push(sid);
    }
    if (start_section >= 0 && (seq.empty() || seq.front() != start_section))
        seq.insert(seq.begin(), start_section);
    if (end_section >= 0 && seq.back() != end_section)
        seq.push_back(end_section);
    return seq;
}

// Split-and-merge: every flow is broken into consecutive-pair hops
// along its section sequence, then identical (start, end) hops are merged.
inline RevisedPlan revise(const InitialPlan& init, const PathCache& cache,
                          const Roadmap& rm) {
    std::map<std::pair<int, int>, int> merged;
    for (const auto& f : init.flows) {
        auto it = cache.paths.find({f.start, f.end});
        if (it == cache.paths.end())
            throw Unreachable("no cached path for flow " +
                              std::to_string(f.start) + "->" +
                              std::to_string(f.end));
        auto seq = decompose(it->second.first, rm, f.start, f.end);
        for (size_t k = 0; k + 1 < seq.size(); ++k)
            if (seq[k] != seq[k + 1]) merged[{seq[k], seq[k + 1]}] += f.count;
    }
    RevisedPlan plan;
    for (const auto& [key, n] : merged)
        plan.flows.push_back({key.first, key.second, n});
    return plan;
}

} // namespace mrta
