// rearrange: instance generation, planning, benchmarking, closed-loop
// simulation and SVG rendering for tabletop rearrangement.
//
// Exit codes: 0 solved/success, 2 unsolved, 1 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "rearrange/arrangement.hpp"
#include "rearrange/baseline.hpp"
#include "rearrange/bench.hpp"
#include "rearrange/executor.hpp"
#include "rearrange/instance_io.hpp"
#include "rearrange/mcts.hpp"
#include "rearrange/svg.hpp"

namespace {

using namespace rearrange;

constexpr int kExitSolved = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUnsolved = 2;

struct PlannerOptions {
  std::string planner = "mcts";
  double c = 1.0;
  std::uint64_t max_iters = 100000;
  std::string normalize = "off";
  std::string tie_break = "random";
  std::uint64_t budget = 0;
  std::int64_t time_limit_ms = 10000;
  int find_tries = kDefaultFindPositionTries;
  bool avoid_targets = false;
  double neighborhood = 0.0;
};

void add_planner_options(CLI::App* cmd, PlannerOptions& o) {
  cmd->add_option("--planner", o.planner, "Planner")
      ->check(CLI::IsMember({"mcts", "baseline", "randperm"}))
      ->capture_default_str();
  cmd->add_option("--c", o.c, "MCTS exploration constant")->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--max-iters", o.max_iters, "MCTS iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--normalize-reward", o.normalize, "Divide backed-up rewards by N")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd->add_option("--tie-break", o.tie_break, "Rule for equal UCB scores")
      ->check(CLI::IsMember({"lowest", "random"}))
      ->capture_default_str();
  cmd->add_option("--budget", o.budget, "randperm collision-check budget");
  cmd->add_option("--time-limit-ms", o.time_limit_ms, "Baseline time limit")->capture_default_str();
  cmd->add_option("--find-tries", o.find_tries, "Free-position samples per relocation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--avoid-targets", o.avoid_targets, "Keep relocated objects off all targets");
  cmd->add_option("--neighborhood", o.neighborhood,
                  "Sample relocations within this half-extent of the object (meters, 0 = off)");
}

PlannerSpec make_planner_spec(const PlannerOptions& o) {
  PlannerSpec spec;
  MotionOptions motion;
  motion.find_position_tries = o.find_tries;
  motion.avoid_other_targets = o.avoid_targets;
  if (o.neighborhood > 0.0) motion.neighborhood_half_extent = o.neighborhood;

  spec.mcts.exploration_c = o.c;
  spec.mcts.max_iterations = o.max_iters;
  spec.mcts.normalize_reward = o.normalize == "on";
  spec.mcts.tie_break = o.tie_break == "random" ? TieBreak::kRandom : TieBreak::kLowestIndex;
  spec.mcts.motion = motion;
  spec.baseline.time_limit = std::chrono::milliseconds(o.time_limit_ms);
  spec.baseline.motion = motion;
  if (o.planner == "mcts") {
    spec.kind = PlannerKind::kMcts;
  } else if (o.planner == "baseline") {
    spec.kind = PlannerKind::kBaseline;
  } else {
    spec.kind = PlannerKind::kRandperm;
    if (o.budget < 1) throw std::invalid_argument("--planner randperm requires --budget >= 1");
    spec.baseline.collision_budget = o.budget;
  }
  return spec;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabletop rearrangement planning with Monte-Carlo Tree Search"};
  app.require_subcommand(1);

  // gen
  std::size_t gen_n = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_kind = "random";
  double gen_radius = kDefaultRadius;
  double gen_epsilon = kDefaultEpsilon;
  std::vector<double> gen_ws;
  int gen_budget = kDefaultGenerationBudget;
  std::string gen_out;
  std::string gen_witness_out;
  auto* gen = app.add_subcommand("gen", "Generate an instance (JSON)");
  gen->add_option("-n,--objects", gen_n, "Number of objects")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--kind", gen_kind, "Generator")->check(CLI::IsMember({"random", "monotone"}))->capture_default_str();
  gen->add_option("--radius", gen_radius, "Object radius (m)")->capture_default_str();
  gen->add_option("--epsilon", gen_epsilon, "At-target tolerance (m)")->capture_default_str();
  gen->add_option("--workspace", gen_ws, "x_min x_max y_min y_max (m)")->expected(4);
  gen->add_option("--budget", gen_budget, "Placement attempts per arrangement")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");
  gen->add_option("--witness", gen_witness_out, "monotone: write the construction plan here");

  // solve
  std::string solve_in;
  std::uint64_t solve_seed = 0;
  double solve_epsilon = 0.0;
  bool solve_no_timing = false;
  std::string solve_out;
  PlannerOptions solve_planner;
  auto* solve = app.add_subcommand("solve", "Plan for an instance; writes PlanResult JSON");
  solve->add_option("instance", solve_in, "Instance JSON ('-' for stdin)")->required();
  add_planner_options(solve, solve_planner);
  solve->add_option("--seed", solve_seed, "Planner seed")->capture_default_str();
  solve->add_option("--epsilon", solve_epsilon, "Override the instance's epsilon (m)");
  solve->add_flag("--no-timing", solve_no_timing, "Write wall_time_ms as 0");
  solve->add_option("-o,--output", solve_out, "Output file (default stdout)");

  // bench
  std::string bench_spec;
  unsigned bench_jobs = 1;
  std::string bench_format = "csv";
  std::string bench_out;
  std::string bench_summary_out;
  bool bench_no_timing = false;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("spec", bench_spec, "Suite spec JSON")->required();
  bench->add_option("--jobs", bench_jobs, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  bench->add_option("--format", bench_format, "Record format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  bench->add_option("-o,--output", bench_out, "Records output (default stdout)");
  bench->add_option("--summary", bench_summary_out, "Also write per-(planner, n) summaries here");
  bench->add_flag("--no-timing", bench_no_timing, "Record every wall time as 0");

  // simulate
  std::string sim_in;
  std::string sim_schedule;
  std::uint64_t sim_seed = 0;
  std::uint64_t sim_max_steps = 0;
  double sim_noise = 0.0;
  std::string sim_out;
  PlannerOptions sim_planner;
  auto* simulate = app.add_subcommand("simulate", "Closed-loop execution; writes ExecTrace JSON-lines");
  simulate->add_option("instance", sim_in, "Instance JSON")->required();
  simulate->add_option("--perturbations", sim_schedule, "Perturbation schedule JSON");
  add_planner_options(simulate, sim_planner);
  simulate->add_option("--seed", sim_seed, "Episode seed")->capture_default_str();
  simulate->add_option("--max-steps", sim_max_steps, "Step limit (0 = 2N + 5|perturbations|)")->capture_default_str();
  simulate->add_option("--noise", sim_noise, "Observation noise half-width (m)")->capture_default_str();
  simulate->add_option("-o,--output", sim_out, "Output file (default stdout)");

  // render
  std::string render_in;
  std::string render_plan;
  std::string render_trace;
  std::string render_out;
  double render_scale = 1000.0;
  auto* render = app.add_subcommand("render", "Render an instance with an optional plan or trace as SVG");
  render->add_option("instance", render_in, "Instance JSON")->required();
  auto* plan_opt = render->add_option("--plan", render_plan, "PlanResult JSON");
  render->add_option("--trace", render_trace, "ExecTrace JSON-lines")->excludes(plan_opt);
  render->add_option("--scale", render_scale, "Pixels per meter")->capture_default_str();
  render->add_option("-o,--output", render_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*gen) {
      GenerationParams params;
      params.radius = gen_radius;
      params.epsilon = gen_epsilon;
      params.attempt_budget = gen_budget;
      if (!gen_ws.empty()) params.workspace = Workspace{gen_ws[0], gen_ws[1], gen_ws[2], gen_ws[3]};
      Rng rng(gen_seed);
      if (gen_kind == "monotone") {
        const MonotoneInstance mono = gen_monotone_instance(gen_n, params, rng);
        write_text(gen_out, instance_to_json(mono.instance).dump(2) + "\n");
        if (!gen_witness_out.empty()) {
          PlanResult witness;
          witness.solved = true;
          witness.plan = mono.witness;
          write_text(gen_witness_out, plan_result_to_json(witness, false).dump(2) + "\n");
        }
      } else {
        write_text(gen_out, instance_to_json(gen_random_instance(gen_n, params, rng)).dump(2) + "\n");
      }
      return kExitSolved;
    }

    if (*solve) {
      Instance inst = instance_from_json(read_json(solve_in));
      if (solve_epsilon > 0.0) inst.epsilon = solve_epsilon;
      const PlanResult res = run_planner(inst, make_planner_spec(solve_planner), solve_seed);
      write_text(solve_out, plan_result_to_json(res, !solve_no_timing).dump(2) + "\n");
      return res.solved ? kExitSolved : kExitUnsolved;
    }

    if (*bench) {
      SuiteSpec spec = suite_from_json(read_json(bench_spec));
      if (bench_no_timing) spec.record_wall_time = false;
      RunOptions options;
      options.jobs = bench_jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : bench_jobs;
      const auto records = run_suite(spec, options);
      if (bench_format == "csv") {
        write_text(bench_out, records_to_csv(records));
      } else {
        write_text(bench_out, records_to_json(records).dump(2) + "\n");
      }
      if (!bench_summary_out.empty()) {
        const auto summaries = records.empty() ? std::vector<Summary>{} : aggregate(records);
        if (bench_format == "csv") {
          write_text(bench_summary_out, summaries_to_csv(summaries));
        } else {
          write_text(bench_summary_out, summaries_to_json(summaries).dump(2) + "\n");
        }
      }
      return kExitSolved;
    }

    if (*simulate) {
      const Instance inst = instance_from_json(read_json(sim_in));
      ClosedLoopConfig config;
      config.planner = make_planner_spec(sim_planner);
      if (!sim_schedule.empty()) config.perturbations = schedule_from_json(read_json(sim_schedule));
      config.max_steps = sim_max_steps;
      config.seed = sim_seed;
      config.observation_noise = sim_noise;
      const ExecTrace trace = run_closed_loop(inst, config);
      write_text(sim_out, trace_to_jsonl(trace));
      return trace.success ? kExitSolved : kExitUnsolved;
    }

    if (*render) {
      const Instance inst = instance_from_json(read_json(render_in));
      SvgStyle style;
      style.pixels_per_meter = render_scale;
      std::string svg;
      if (!render_plan.empty()) {
        svg = render_svg(inst, plan_result_from_json(read_json(render_plan)).plan, style);
      } else if (!render_trace.empty()) {
        const ExecTrace trace = trace_from_jsonl(read_text(render_trace));
        Plan executed;
        for (const auto& s : trace.steps) {
          if (s.motion) executed.push_back(*s.motion);
        }
        svg = render_svg(inst, executed, style);
      } else {
        svg = render_svg(inst, Plan{}, style);
      }
      write_text(render_out, svg);
      return kExitSolved;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
