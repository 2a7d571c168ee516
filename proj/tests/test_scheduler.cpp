#include <catch2/catch_amalgamated.hpp>

#include "mrta/scheduler.hpp"

#include "helpers.hpp"

using namespace mrta;

namespace {

Instance open_instance() {
    Instance inst;
    inst.workspace = {-5, -5, 60, 5};
    inst.robot_radius = 0.4;
    return inst;
}

RevisedPlan plan_of(std::vector<Flow> flows) {
    RevisedPlan p;
    p.flows = std::move(flows);
    return p;
}

} // namespace

TEST_CASE("sections are categorized by flow incidence") {
    Roadmap rm = testutil::make_line_roadmap({1, 1, 1, 1});
    auto cat = categorize(plan_of({{0, 1, 2}, {1, 2, 1}}), rm);
    CHECK(cat.at(0) == Category::C2); // outgoing only
    CHECK(cat.at(1) == Category::C4); // both
    CHECK(cat.at(2) == Category::C3); // incoming only
    CHECK(cat.at(3) == Category::C1); // untouched
    CHECK(cat.size() == rm.sections.size());
}

TEST_CASE("flows run phase by phase") {
    Roadmap rm = testutil::make_line_roadmap({1, 1, 1, 1, 1});
    // 0 is C2 feeding C4 section 1, which forwards to C3 section 2;
    // 4 is C2 feeding C3 section 3 directly
    RevisedPlan plan = plan_of({{1, 2, 1}, {0, 1, 1}, {4, 3, 1}});
    auto cat = categorize(plan, rm);
    std::map<int, int> count = {{0, 1}, {1, 1}, {2, 0}, {3, 0}, {4, 1}};
    auto ordered = order_flows(plan, cat, count);
    REQUIRE(ordered.size() == 3);
    CHECK(ordered[0] == Flow{0, 1, 1}); // C2->C4 first
    CHECK(ordered[1] == Flow{4, 3, 1}); // then C2->C3
    CHECK(ordered[2] == Flow{1, 2, 1}); // C4->C3 last
}

TEST_CASE("chained C4 sections run in topological order") {
    Roadmap rm = testutil::make_line_roadmap({1, 1, 1, 1, 1});
    // 0 -> 1 -> 2 -> 3: sections 1 and 2 both relay
    RevisedPlan plan = plan_of({{2, 3, 1}, {1, 2, 1}, {0, 1, 1}});
    auto cat = categorize(plan, rm);
    CHECK(cat.at(1) == Category::C4);
    CHECK(cat.at(2) == Category::C4);
    auto ordered =
        order_flows(plan, cat, {{0, 1}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
    REQUIRE(ordered.size() == 3);
    CHECK(ordered[0] == Flow{0, 1, 1});
    CHECK(ordered[1] == Flow{1, 2, 1}); // ready only after 0->1
    CHECK(ordered[2] == Flow{2, 3, 1});
}

TEST_CASE("C4 cycles fall back to roster coverage") {
    // 0 <-> 1 exchange: both are C4 and mutually dependent, but each side
    // already holds enough robots to move first
    Roadmap rm = testutil::make_line_roadmap({1, 1});
    RevisedPlan plan = plan_of({{0, 1, 1}, {1, 0, 1}});
    auto cat = categorize(plan, rm);
    auto ordered = order_flows(plan, cat, {{0, 1}, {1, 1}});
    REQUIRE(ordered.size() == 2);
    CHECK(ordered[0] == Flow{0, 1, 1});

    // with empty rosters the same cycle cannot start anywhere
    CHECK_THROWS_AS(order_flows(plan, cat, {{0, 0}, {1, 0}}),
                    CyclicDependency);
}

TEST_CASE("execution picks natives nearest the exit junction") {
    Roadmap rm = testutil::make_line_roadmap({3, 3});
    Instance inst = open_instance();
    // robots at arc 2.5 (id 0), 5 (id 1), 7.5 (id 2) of section 0; the flow
    // exits through JC 1, so robot 2 leaves
    inst.robots = {{2.5, 1}, {5.0, 1}, {7.5, 1}};
    inst.tasks = {{2.6, -1}, {5.1, -1}, {15.0, 1}};
    auto assoc = associate(inst, rm);
    auto [itins, ledger] =
        execute_flows({{0, 1, 1}}, assoc, inst, rm);

    const RobotItinerary* moved = nullptr;
    for (const auto& it : itins)
        if (it.transferred()) moved = &it;
    REQUIRE(moved != nullptr);
    CHECK(moved->robot == 2);
    CHECK(moved->origin_section == 0);
    CHECK(moved->final_section() == 1);
    CHECK(moved->entering_jc() == 1);
    // start leg 1.0 plus arc 7.5 -> 10.0
    CHECK(moved->traveled == Catch::Approx(1.0 + 2.5));
    CHECK(moved->waypoints == std::vector<int>{5, 1});

    REQUIRE(ledger.by_section.count(1) == 1);
    REQUIRE(ledger.by_section.at(1).size() == 1);
    CHECK(ledger.by_section.at(1)[0].robot == 2);
    CHECK(ledger.by_section.at(1)[0].entering_jc == 1);

    // unmoved robots keep their single hop and nearest node
    for (const auto& it : itins)
        if (!it.transferred()) {
            CHECK(it.hops.size() == 1);
            CHECK(it.waypoints.size() == 1);
            CHECK(it.traveled == 0.0);
        }
}

TEST_CASE("relayed robots cross the full middle section") {
    Roadmap rm = testutil::make_line_roadmap({3, 3, 3});
    Instance inst = open_instance();
    inst.robots = {{7.5, 1}};
    inst.tasks = {{25.0, 1}};
    auto assoc = associate(inst, rm);
    auto [itins, ledger] =
        execute_flows({{0, 1, 1}, {1, 2, 1}}, assoc, inst, rm);
    REQUIRE(itins.size() == 1);
    const auto& it = itins[0];
    CHECK(it.hops.size() == 3);
    CHECK(it.final_section() == 2);
    CHECK(it.entering_jc() == 2);
    // start leg 1 + 2.5 to JC1 + 10 across section 1
    CHECK(it.traveled == Catch::Approx(13.5));
    CHECK(it.waypoints == std::vector<int>{6, 1, 7, 8, 9, 2});
    CHECK(ledger.by_section.count(1) == 0); // did not stay there
    REQUIRE(ledger.by_section.count(2) == 1);
}

TEST_CASE("arrival ledger is sorted by travel distance") {
    Roadmap rm = testutil::make_line_roadmap({3, 3});
    Instance inst = open_instance();
    // two robots leave section 0; the one nearer the exit arrives first
    inst.robots = {{2.5, 1}, {7.5, 1}};
    inst.tasks = {{12.5, 1}, {15.0, 1}};
    auto assoc = associate(inst, rm);
    auto [itins, ledger] = execute_flows({{0, 1, 2}}, assoc, inst, rm);
    REQUIRE(ledger.by_section.at(1).size() == 2);
    CHECK(ledger.by_section.at(1)[0].robot == 1);
    CHECK(ledger.by_section.at(1)[1].robot == 0);
    CHECK(ledger.by_section.at(1)[0].distance <
          ledger.by_section.at(1)[1].distance);
}

TEST_CASE("robot conservation across any executed plan") {
    Roadmap rm = testutil::make_line_roadmap({3, 3, 3});
    Instance inst = open_instance();
    inst.robots = {{2.5, 1}, {5.0, 1}, {7.5, 1}, {15.0, 1}};
    inst.tasks = {{2.6, -1}, {12.4, -1}, {25.0, 1}, {26.0, 1}};
    auto assoc = associate(inst, rm);
    auto [itins, ledger] =
        execute_flows({{0, 1, 2}, {1, 2, 2}}, assoc, inst, rm);
    std::map<int, int> final_count;
    for (const auto& it : itins) final_count[it.final_section()] += 1;
    CHECK(final_count[0] == 1);
    CHECK(final_count[1] == 1);
    CHECK(final_count[2] == 2);
}

TEST_CASE("overdrawn sections raise") {
    Roadmap rm = testutil::make_line_roadmap({3, 3});
    Instance inst = open_instance();
    inst.robots = {{2.5, 1}};
    inst.tasks = {{15.0, 1}};
    auto assoc = associate(inst, rm);
    CHECK_THROWS_AS(execute_flows({{0, 1, 2}}, assoc, inst, rm),
                    InsufficientRobots);
}
