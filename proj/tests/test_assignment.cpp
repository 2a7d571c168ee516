#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mrta/assignment.hpp"
#include "mrta/hungarian.hpp"

#include "helpers.hpp"

using namespace mrta;

TEST_CASE("solver handles tiny matrices") {
    CHECK(hungarian({}).empty());
    CHECK(hungarian({{3.0}}) == std::vector<int>{0});
    auto m = hungarian({{1, 2}, {2, 1}});
    CHECK(m == std::vector<int>{0, 1});
    auto swapped = hungarian({{9, 1}, {1, 9}});
    CHECK(swapped == std::vector<int>{1, 0});
}

TEST_CASE("solver matches permutation search on random matrices") {
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> val(0, 100);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(eng() % 6);
        std::vector<std::vector<double>> c(n, std::vector<double>(n));
        for (auto& row : c)
            for (double& x : row) x = val(eng);
        auto sol = hungarian(c);
        CHECK(assignment_cost(c, sol) ==
              Catch::Approx(testutil::brute_assignment_cost(c)).margin(1e-6));
        std::vector<bool> hit(n, false);
        for (int j : sol) {
            REQUIRE((j >= 0 && j < n));
            hit[j] = true;
        }
        CHECK(std::count(hit.begin(), hit.end(), true) == n);
    }
}

TEST_CASE("ties resolve to the smallest row-to-column mapping") {
    std::mt19937_64 eng(23);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(eng() % 4);
        // small integer entries generate plenty of co-optimal assignments
        std::vector<std::vector<double>> c(n, std::vector<double>(n));
        for (auto& row : c)
            for (double& x : row) x = static_cast<double>(eng() % 3);
        auto sol = hungarian(c);
        auto lex = testutil::brute_lex_optimum(c, 1e-9);
        CHECK(sol == lex);
    }
    // hand case: every assignment costs 2
    CHECK(hungarian({{1, 1}, {1, 1}}) == std::vector<int>{0, 1});
    CHECK(hungarian({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}) ==
          std::vector<int>{0, 1, 2});
}

TEST_CASE("cost matrix expands sections into slots") {
    // line of 4 sections: 0 has +2 surplus, 3 has -2, others balanced
    Roadmap rm = testutil::make_line_roadmap({3, 3, 3, 3});
    DemandReport rep;
    rep.balance = {{0, 2}, {1, 0}, {2, 0}, {3, -2}};
    rep.robots_per_section = {{0, 2}, {1, 1}, {2, 1}, {3, 0}};
    rep.tasks_per_section = {{0, 0}, {1, 1}, {2, 1}, {3, 2}};
    rep.oversupplied = {0};
    rep.undersupplied = {3};
    rep.balanced = {1, 2};

    auto [cm, cache] = build_cost_matrix(rep, rm);
    REQUIRE(cm.row_slots.size() == 2);
    REQUIRE(cm.col_slots.size() == 2);
    CHECK(cm.row_slots[0] == std::make_pair(0, 0));
    CHECK(cm.row_slots[1] == std::make_pair(0, 1));
    CHECK(cm.col_slots[1] == std::make_pair(3, 1));
    // center of section 0 is node at x=5, center of section 3 at x=35
    for (const auto& row : cm.cost)
        for (double c : row) CHECK(c == Catch::Approx(30.0));
    REQUIRE(cache.paths.count({0, 3}) == 1);
    const auto& [path, len] = cache.paths.at({0, 3});
    CHECK(len == Catch::Approx(30.0));
    CHECK(path.front() == rm.sections[0].center_node);
    CHECK(path.back() == rm.sections[3].center_node);
}

TEST_CASE("flow aggregation merges duplicate slot pairs") {
    CostMatrix cm;
    cm.row_slots = {{0, 0}, {0, 1}, {2, 0}};
    cm.col_slots = {{1, 0}, {1, 1}, {3, 0}};
    cm.cost.assign(3, std::vector<double>(3, 1.0));
    auto plan = redistribution_planning({0, 1, 2}, cm);
    REQUIRE(plan.flows.size() == 2);
    CHECK(plan.flows[0] == Flow{0, 1, 2});
    CHECK(plan.flows[1] == Flow{2, 3, 1});
}

TEST_CASE("unbalanced totals and unreachable pairs raise") {
    Roadmap rm = testutil::make_line_roadmap({3, 3});
    DemandReport rep;
    rep.balance = {{0, 2}, {1, -1}};
    rep.oversupplied = {0};
    rep.undersupplied = {1};
    CHECK_THROWS_AS(build_cost_matrix(rep, rm), CountMismatch);

    // disconnected pair: two separate chains in one roadmap
    Roadmap two = testutil::make_line_roadmap({1});
    // graft an isolated second chain (nodes 3,4 + inner 5)
    int base = static_cast<int>(two.nodes.size());
    two.nodes.push_back({base, {0, 50}, NodeKind::JC, {}});
    two.nodes.push_back({base + 1, {10, 50}, NodeKind::JC, {}});
    two.nodes.push_back({base + 2, {5, 50}, NodeKind::Inner, {1}});
    Section s1;
    s1.id = 1;
    s1.jc_endpoints = {base, base + 1};
    s1.inner_nodes = {base + 2};
    s1.length = 10;
    s1.center_node = base + 2;
    two.sections.push_back(s1);
    two.edges.push_back({base, base + 2, 5});
    two.edges.push_back({base + 2, base + 1, 5});
    two.build_adjacency();

    DemandReport disc;
    disc.balance = {{0, 1}, {1, -1}};
    disc.oversupplied = {0};
    disc.undersupplied = {1};
    CHECK_THROWS_AS(build_cost_matrix(disc, two), Unreachable);
}

TEST_CASE("assignment stage is cost optimal over flows") {
    // surpluses at both ends, deficits in the middle: each surplus should
    // feed its nearer deficit
    Roadmap rm = testutil::make_line_roadmap({3, 3, 3, 3, 3});
    DemandReport rep;
    rep.balance = {{0, 1}, {1, -1}, {2, 0}, {3, -1}, {4, 1}};
    rep.oversupplied = {0, 4};
    rep.undersupplied = {1, 3};
    rep.balanced = {2};
    auto [cm, cache, plan] = assignment_stage(rep, rm);
    REQUIRE(plan.flows.size() == 2);
    CHECK(plan.flows[0] == Flow{0, 1, 1});
    CHECK(plan.flows[1] == Flow{4, 3, 1});
}
