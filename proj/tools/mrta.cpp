#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mrta/generator.hpp"
#include "mrta/pipeline.hpp"
#include "mrta/render.hpp"
#include "mrta/simulator.hpp"

namespace {

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw mrta::ParseError("cannot write " + path);
    out << body;
}

void maybe_dump(const std::string& path, const mrta::json& j) {
    if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

mrta::SimConfig make_cfg(const mrta::FinalPlan& plan, double radius,
                         double speed, double dt) {
    mrta::SimConfig cfg = mrta::default_sim_config(plan, radius);
    if (speed > 0) {
        cfg.speed = speed;
        cfg.dt = radius / (2.0 * cfg.speed);
    }
    if (dt > 0) cfg.dt = dt;
    double longest = 0;
    for (const auto& [r, len] : plan.lengths) longest = std::max(longest, len);
    cfg.max_steps = std::max<long>(
        100, std::lround(10.0 * longest / (cfg.speed * cfg.dt)));
    return cfg;
}

struct PlanDumps {
    std::string analysis, costs, flows, itineraries;
};

void add_plan_flags(CLI::App* cmd, std::string& in, std::string& algo,
                    PlanDumps& dumps) {
    cmd->add_option("-i,--input", in, "instance JSON")->required();
    cmd->add_option("--algo", algo, "rm|hungarian-euclid|hungarian-roadmap|greedy")
        ->check(CLI::IsMember(
            {"rm", "hungarian-euclid", "hungarian-roadmap", "greedy"}));
    cmd->add_option("--dump-analysis", dumps.analysis, "demand report JSON path");
    cmd->add_option("--dump-costs", dumps.costs, "cost matrix CSV path");
    cmd->add_option("--dump-flows", dumps.flows, "X_init and X JSON path");
    cmd->add_option("--dump-itineraries", dumps.itineraries,
                    "per-robot itinerary JSON path");
}

void emit_dumps(const mrta::PlanResult& res, const std::string& algo,
                const PlanDumps& dumps) {
    if (algo != "rm" &&
        (!dumps.analysis.empty() || !dumps.costs.empty() ||
         !dumps.flows.empty() || !dumps.itineraries.empty()))
        throw mrta::ValidationError("stage dumps only exist for --algo rm");
    maybe_dump(dumps.analysis, mrta::demand_report_to_json(res.report));
    if (!dumps.costs.empty())
        write_file(dumps.costs, mrta::cost_matrix_to_csv(res.costs));
    maybe_dump(dumps.flows, mrta::flows_to_json(res.init, res.revised));
    maybe_dump(dumps.itineraries, mrta::itineraries_to_json(res.itineraries));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"roadmap-based multi-robot task allocation"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
    std::string gen_map = "rooms", gen_out;
    int gen_n = 10, gen_m = 10;
    unsigned long long gen_seed = 1;
    gen->add_option("--map", gen_map, "corridor|rooms|random-polygons")
        ->check(CLI::IsMember({"corridor", "rooms", "random-polygons"}));
    gen->add_option("-n,--robots", gen_n, "robot count");
    gen->add_option("-m,--tasks", gen_m, "task count");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--output", gen_out, "instance JSON path")->required();

    auto* plan = app.add_subcommand("plan", "plan allocation for an instance");
    std::string plan_in, plan_out, plan_algo = "rm";
    PlanDumps plan_dumps;
    add_plan_flags(plan, plan_in, plan_algo, plan_dumps);
    plan->add_option("-o,--output", plan_out, "plan JSON path");

    auto* sim = app.add_subcommand("sim", "plan and simulate");
    std::string sim_in, sim_out, sim_algo = "rm", sim_trace, sim_events;
    PlanDumps sim_dumps;
    double sim_speed = 0, sim_dt = 0;
    add_plan_flags(sim, sim_in, sim_algo, sim_dumps);
    sim->add_option("-o,--output", sim_out, "metrics JSON path");
    sim->add_option("--speed", sim_speed, "robot speed m/s");
    sim->add_option("--dt", sim_dt, "time step s");
    sim->add_option("--trace", sim_trace, "trace CSV path");
    sim->add_option("--events", sim_events, "events JSON path");

    auto* render = app.add_subcommand("render", "render instance/plan to SVG");
    std::string ren_in, ren_out, ren_algo = "rm";
    bool ren_plan = false, ren_flows = false;
    render->add_option("-i,--input", ren_in, "instance JSON")->required();
    render->add_option("-o,--output", ren_out, "SVG path")->required();
    render->add_option("--algo", ren_algo, "planner for overlays");
    render->add_flag("--plan", ren_plan, "overlay robot paths");
    render->add_flag("--flows", ren_flows, "overlay revised flows");

    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    std::string bench_in, bench_out;
    bench->add_option("-i,--input", bench_in, "suite JSON")->required();
    bench->add_option("-o,--output", bench_out, "CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            mrta::Instance inst =
                mrta::gen_instance(gen_map, gen_n, gen_m, gen_seed);
            auto violations = mrta::validate_instance(inst);
            if (!violations.empty())
                throw mrta::ValidationError(violations.front());
            mrta::save_instance(inst, gen_out);
        } else if (*plan) {
            mrta::Instance inst = mrta::load_instance(plan_in);
            mrta::PlanResult res = mrta::plan_with_algo(inst, plan_algo);
            emit_dumps(res, plan_algo, plan_dumps);
            mrta::json out = mrta::final_plan_to_json(res.plan);
            if (plan_out.empty())
                std::cout << out.dump(2) << "\n";
            else
                write_file(plan_out, out.dump(2) + "\n");
        } else if (*sim) {
            mrta::Instance inst = mrta::load_instance(sim_in);
            mrta::PlanResult res = mrta::plan_with_algo(inst, sim_algo);
            emit_dumps(res, sim_algo, sim_dumps);
            mrta::SimConfig cfg =
                make_cfg(res.plan, inst.robot_radius, sim_speed, sim_dt);
            auto [trace, metrics] = mrta::simulate(res.plan, res.roadmap, cfg);
            if (!sim_trace.empty()) write_file(sim_trace, mrta::trace_to_csv(trace));
            maybe_dump(sim_events, mrta::events_to_json(trace));
            mrta::json out = mrta::metrics_to_json(metrics);
            if (sim_out.empty())
                std::cout << out.dump(2) << "\n";
            else
                write_file(sim_out, out.dump(2) + "\n");
        } else if (*render) {
            mrta::Instance inst = mrta::load_instance(ren_in);
            if (ren_plan || ren_flows) {
                mrta::PlanResult res = mrta::plan_with_algo(inst, ren_algo);
                write_file(ren_out,
                           mrta::render_svg(inst, res.roadmap,
                                            ren_plan ? &res.plan : nullptr,
                                            ren_flows ? &res.revised.flows
                                                      : nullptr));
            } else {
                mrta::Roadmap rm = mrta::gen_roadmap(inst, {});
                write_file(ren_out, mrta::render_svg(inst, rm));
            }
        } else if (*bench) {
            std::ifstream in(bench_in);
            if (!in) throw mrta::ParseError("cannot open " + bench_in);
            mrta::json suite = mrta::json::parse(in);
            std::ostringstream csv;
            csv << "algo,map,n,m,seed,status,makespan,sum_of_costs,conflicts,"
                   "deadlock,t_roadmap_ms,t_analysis_ms,t_assignment_ms,"
                   "t_revision_ms,t_scheduling_ms,t_allocation_ms\n";
            for (const auto& run : suite.at("runs")) {
                std::string map = run.at("map");
                int n = run.at("n"), m = run.at("m");
                for (const auto& seed : run.at("seeds"))
                    for (const auto& algo : run.at("algos")) {
                        csv << algo.get<std::string>() << ',' << map << ',' << n
                            << ',' << m << ',' << seed.get<long long>() << ',';
                        try {
                            mrta::Instance inst = mrta::gen_instance(
                                map, n, m, seed.get<unsigned long long>());
                            mrta::PlanResult res =
                                mrta::plan_with_algo(inst, algo);
                            mrta::SimConfig cfg = make_cfg(
                                res.plan, inst.robot_radius, 0, 0);
                            cfg.record_trace = false;
                            auto [trace, metrics] =
                                mrta::simulate(res.plan, res.roadmap, cfg);
                            long conflicts = 0;
                            for (const auto& [k, v] : metrics.conflicts)
                                conflicts += v;
                            csv << "ok," << mrta::round_sig(metrics.makespan)
                                << ',' << mrta::round_sig(metrics.sum_of_costs)
                                << ',' << conflicts << ','
                                << (metrics.deadlock ? 1 : 0);
                            for (const char* stage :
                                 {"roadmap", "analysis", "assignment",
                                  "revision", "scheduling", "allocation"}) {
                                auto it = res.timings_ms.find(stage);
                                csv << ','
                                    << (it == res.timings_ms.end() ? 0.0
                                                                   : it->second);
                            }
                            csv << '\n';
                        } catch (const std::exception& e) {
                            std::string why = e.what();
                            for (auto& c : why)
                                if (c == ',' || c == '\n') c = ';';
                            csv << "error:" << why << ",,,,,,,,,,\n";
                        }
                    }
            }
            write_file(bench_out, csv.str());
        }
    } catch (const mrta::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mrta::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mrta::StepLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
