#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mrta/generator.hpp"
#include "mrta/gvd.hpp"
#include "mrta/roadmap.hpp"

#include "helpers.hpp"

using namespace mrta;

TEST_CASE("node count law") {
    CHECK(regular_node_count(10.0, 1.0) == 7);
    CHECK(regular_node_count(10.0, 0.5) == 12);
    CHECK(regular_node_count(1.9, 1.0) == 2);  // just the two endpoints
    CHECK(regular_node_count(2.0, 1.0) == 3);
    CHECK(regular_node_count(3.999, 1.0) == 3);
    std::mt19937_64 eng(7);
    for (int t = 0; t < 200; ++t) {
        double L = 0.5 + 99.5 * (eng() % 10000) / 10000.0;
        double r = 0.2 + 1.8 * (eng() % 10000) / 10000.0;
        int n = regular_node_count(L, r);
        CHECK(n == static_cast<int>(std::floor(L / (2 * r))) + 2);
        // resulting spacing never exceeds 2r
        CHECK(L / (n - 1) <= 2 * r + 1e-12);
    }
}

TEST_CASE("section chain bookkeeping") {
    Roadmap rm = testutil::make_line_roadmap({3, 0});
    REQUIRE(rm.sections.size() == 2);
    const Section& s0 = rm.sections[0];
    CHECK(s0.node_count() == 5);
    CHECK(s0.spacing() == Catch::Approx(2.5));
    CHECK(s0.chain().front() == s0.jc_endpoints.first);
    CHECK(s0.chain().back() == s0.jc_endpoints.second);
    CHECK(s0.arc_pos(0) == 0.0);
    CHECK(s0.arc_pos(4) == Catch::Approx(s0.length));
    CHECK(section_center(s0) == s0.chain()[2]);

    const Section& s1 = rm.sections[1];
    CHECK(s1.node_count() == 2);
    CHECK(section_center(s1) == s1.jc_endpoints.first);
}

TEST_CASE("shortest path on a line") {
    Roadmap rm = testutil::make_line_roadmap({3, 3});
    auto [path, len] = shortest_path(rm, 0, 2);
    CHECK(len == Catch::Approx(20.0));
    CHECK(path.front() == 0);
    CHECK(path.back() == 2);
    CHECK(path.size() == rm.nodes.size());
    auto [self, zero] = shortest_path(rm, 1, 1);
    CHECK(self == std::vector<int>{1});
    CHECK(zero == 0.0);
}

TEST_CASE("shortest path matches exhaustive search on random graphs") {
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + static_cast<int>(eng() % 5);
        Roadmap rm;
        for (int i = 0; i < n; ++i)
            rm.nodes.push_back({i, {double(i), 0}, NodeKind::JC, {}});
        // ring plus random chords so every pair is connected
        for (int i = 0; i < n; ++i) {
            double w = 1.0 + (eng() % 100) / 10.0;
            rm.edges.push_back({i, (i + 1) % n, w});
        }
        int chords = static_cast<int>(eng() % 4);
        for (int c = 0; c < chords; ++c) {
            int u = static_cast<int>(eng() % n), v = static_cast<int>(eng() % n);
            if (u == v) continue;
            rm.edges.push_back({u, v, 1.0 + (eng() % 100) / 10.0});
        }
        rm.build_adjacency();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto [path, len] = shortest_path(rm, a, b);
                auto [bpath, blen] = testutil::brute_shortest_path(rm, a, b);
                CHECK(len == Catch::Approx(blen).margin(1e-9));
                CHECK(path.front() == a);
                CHECK(path.back() == b);
            }
    }
}

TEST_CASE("lexicographic tie break") {
    // two equal-length routes 0->3: via 1 or via 2; the rule picks node 1
    Roadmap rm;
    for (int i = 0; i < 4; ++i)
        rm.nodes.push_back({i, {double(i), 0}, NodeKind::JC, {}});
    rm.edges.push_back({0, 1, 5});
    rm.edges.push_back({1, 3, 5});
    rm.edges.push_back({0, 2, 5});
    rm.edges.push_back({2, 3, 5});
    rm.build_adjacency();
    auto [path, len] = shortest_path(rm, 0, 3);
    CHECK(len == Catch::Approx(10.0));
    CHECK(path == std::vector<int>{0, 1, 3});
}

TEST_CASE("unreachable nodes raise") {
    Roadmap rm;
    for (int i = 0; i < 4; ++i)
        rm.nodes.push_back({i, {double(i), 0}, NodeKind::JC, {}});
    rm.edges.push_back({0, 1, 1});
    rm.edges.push_back({2, 3, 1});
    rm.build_adjacency();
    CHECK_THROWS_AS(shortest_path(rm, 0, 3), Unreachable);
}

namespace {

// Second-smallest boundary distance among distinct obstacle ids (workspace
// sides count as four separate ids, matching the skeleton construction).
std::vector<double> site_distances(Point p, const Instance& inst) {
    std::vector<double> d;
    const Rect& w = inst.workspace;
    d.push_back(p.x - w.xmin);
    d.push_back(w.xmax - p.x);
    d.push_back(p.y - w.ymin);
    d.push_back(w.ymax - p.y);
    for (const auto& ob : inst.obstacles) d.push_back(dist_to_obstacle(p, ob));
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST_CASE("roadmap structure on a generated corridor map") {
    Instance inst = gen_instance("corridor", 6, 6, 3);
    Roadmap rm = gen_roadmap(inst);
    const double r = inst.robot_radius;

    REQUIRE(!rm.sections.empty());
    for (const auto& s : rm.sections) {
        CHECK(s.node_count() == regular_node_count(s.length, r));
        // consecutive nodes are evenly spaced along the section
        auto c = s.chain();
        double spacing = s.spacing();
        CHECK(spacing <= 2 * r + 1e-9);
        for (size_t k = 0; k + 1 < c.size(); ++k) {
            double w = -1;
            for (auto [v, ew] : rm.adj[c[k]])
                if (v == c[k + 1]) w = ew;
            REQUIRE(w > 0);
            CHECK(w == Catch::Approx(spacing).margin(1e-9));
        }
        CHECK(rm.is_jc(s.jc_endpoints.first));
        CHECK(rm.is_jc(s.jc_endpoints.second));
        for (int id : s.inner_nodes) {
            CHECK(!rm.is_jc(id));
            CHECK(rm.section_of_inner(id) == s.id);
        }
    }

    for (const auto& n : rm.nodes) {
        CHECK(clearance(n.position, inst.obstacles, inst.workspace) >=
              r - 1e-6);
        // every node sits (approximately) equidistant from its two nearest
        // boundary sites; resampling perturbs this by at most the local
        // spacing plus the boundary sample step
        auto d = site_distances(n.position, inst);
        CHECK(d[1] - d[0] <= 2 * r + r);
    }
}

TEST_CASE("skeleton nodes are equidistant between obstacle sites") {
    // unpruned skeleton on a simple two-slab map: each GVD vertex must be
    // equally close to its two nearest sites, within sampling resolution
    Instance inst = gen_instance("corridor", 2, 2, 1);
    const double step = 0.5 * inst.robot_radius;
    auto samples =
        sample_obstacle_boundaries(inst.obstacles, inst.workspace, step);
    SkelGraph skel = build_gvd(samples, inst.workspace);
    int checked = 0;
    for (size_t i = 0; i < skel.size(); ++i) {
        if (skel.degree(static_cast<int>(i)) == 0) continue;
        auto d = site_distances(skel.pos[i], inst);
        if (d[0] < 2 * step) continue; // too close to a boundary corner
        CHECK(d[1] - d[0] <= 2 * step);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("degenerate inputs raise") {
    std::vector<BoundarySample> one_site;
    sample_segment({0, 0}, {1, 0}, 0.1, 0, one_site);
    CHECK_THROWS_AS(build_gvd(one_site, Rect{0, 0, 1, 1}), DegenerateInput);

    // workspace narrower than the robot leaves nothing accessible
    Instance inst;
    inst.workspace = {0, 0, 10, 0.6};
    inst.robot_radius = 0.5;
    CHECK_THROWS_AS(gen_roadmap(inst), EmptyRoadmap);
}

TEST_CASE("roadmap serialization is stable") {
    Instance a = gen_instance("rooms", 10, 10, 5);
    Instance b = gen_instance("rooms", 10, 10, 5);
    CHECK(roadmap_to_json(gen_roadmap(a)).dump() ==
          roadmap_to_json(gen_roadmap(b)).dump());
}
