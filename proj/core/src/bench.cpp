#include "rearrange/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace rearrange {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kind_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kMcts: return "mcts";
    case PlannerKind::kBaseline: return "baseline";
    case PlannerKind::kRandperm: return "randperm";
  }
  return "unknown";
}

PlannerKind kind_from_name(const std::string& name) {
  if (name == "mcts") return PlannerKind::kMcts;
  if (name == "baseline") return PlannerKind::kBaseline;
  if (name == "randperm") return PlannerKind::kRandperm;
  throw FormatError("unknown planner type '" + name + "'");
}

MotionOptions motion_from_json(const Json& j) {
  MotionOptions m;
  m.find_position_tries = j.value("find_position_tries", m.find_position_tries);
  m.avoid_other_targets = j.value("avoid_other_targets", m.avoid_other_targets);
  if (j.contains("neighborhood") && !j.at("neighborhood").is_null()) {
    m.neighborhood_half_extent = j.at("neighborhood").get<double>();
  }
  return m;
}

void motion_to_json(const MotionOptions& m, Json& out) {
  out["find_position_tries"] = m.find_position_tries;
  out["avoid_other_targets"] = m.avoid_other_targets;
  if (m.neighborhood_half_extent) {
    out["neighborhood"] = *m.neighborhood_half_extent;
  } else {
    out["neighborhood"] = nullptr;
  }
}

PlannerEntry planner_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw FormatError("planner entries need a 'type'");
  PlannerEntry e;
  e.spec.kind = kind_from_name(j.at("type").get<std::string>());
  e.id = j.value("id", std::string(kind_name(e.spec.kind)));
  switch (e.spec.kind) {
    case PlannerKind::kMcts:
      e.spec.mcts.exploration_c = j.value("c", e.spec.mcts.exploration_c);
      e.spec.mcts.max_iterations = j.value("max_iterations", e.spec.mcts.max_iterations);
      e.spec.mcts.normalize_reward = j.value("normalize_reward", e.spec.mcts.normalize_reward);
      if (j.contains("tie_break")) {
        const auto rule = j.at("tie_break").get<std::string>();
        if (rule != "lowest" && rule != "random") throw FormatError("unknown tie_break '" + rule + "'");
        e.spec.mcts.tie_break = rule == "random" ? TieBreak::kRandom : TieBreak::kLowestIndex;
      }
      e.spec.mcts.motion = motion_from_json(j);
      break;
    case PlannerKind::kRandperm:
      if (j.contains("budget")) e.spec.baseline.collision_budget = j.at("budget").get<std::uint64_t>();
      if (j.contains("budget_from")) e.budget_from = j.at("budget_from").get<std::string>();
      e.budget_scale = j.value("budget_scale", 1.0);
      [[fallthrough]];
    case PlannerKind::kBaseline:
      e.spec.baseline.time_limit =
          std::chrono::milliseconds(j.value("time_limit_ms", e.spec.baseline.time_limit.count()));
      e.spec.baseline.motion = motion_from_json(j);
      break;
  }
  return e;
}

Json planner_to_json(const PlannerEntry& e) {
  Json out = Json::object();
  out["id"] = e.id;
  out["type"] = kind_name(e.spec.kind);
  switch (e.spec.kind) {
    case PlannerKind::kMcts:
      out["c"] = e.spec.mcts.exploration_c;
      out["max_iterations"] = e.spec.mcts.max_iterations;
      out["normalize_reward"] = e.spec.mcts.normalize_reward;
      out["tie_break"] = e.spec.mcts.tie_break == TieBreak::kRandom ? "random" : "lowest";
      motion_to_json(e.spec.mcts.motion, out);
      break;
    case PlannerKind::kRandperm:
      if (e.spec.baseline.collision_budget) out["budget"] = *e.spec.baseline.collision_budget;
      if (e.budget_from) out["budget_from"] = *e.budget_from;
      out["budget_scale"] = e.budget_scale;
      [[fallthrough]];
    case PlannerKind::kBaseline:
      out["time_limit_ms"] = e.spec.baseline.time_limit.count();
      motion_to_json(e.spec.baseline.motion, out);
      break;
  }
  return out;
}

double round6(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_real(v));
}

Json real_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  return round6(v);
}

double real_from_json(const Json& j) {
  if (j.is_null()) return kNaN;
  return j.get<double>();
}

}  // namespace

void validate_suite(const SuiteSpec& spec) {
  if (spec.n_min < 1 || spec.n_min > spec.n_max) {
    throw std::invalid_argument("suite needs 1 <= n_min <= n_max");
  }
  if (spec.buffer_probes < 1) throw std::invalid_argument("buffer_probes must be >= 1");
  spec.generation.workspace.validate(spec.generation.radius);
  if (!(spec.generation.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<std::string> seen;
  for (const PlannerEntry& e : spec.planners) {
    if (std::find(seen.begin(), seen.end(), e.id) != seen.end()) {
      throw std::invalid_argument("duplicate planner id '" + e.id + "'");
    }
    if (e.spec.kind == PlannerKind::kRandperm) {
      if (e.budget_from) {
        if (std::find(seen.begin(), seen.end(), *e.budget_from) == seen.end()) {
          throw std::invalid_argument("planner '" + e.id + "' takes its budget from '" +
                                      *e.budget_from + "', which must be listed before it");
        }
        if (!(e.budget_scale > 0.0)) throw std::invalid_argument("budget_scale must be positive");
      } else if (!e.spec.baseline.collision_budget || *e.spec.baseline.collision_budget < 1) {
        throw std::invalid_argument("randperm planner '" + e.id +
                                    "' needs a budget >= 1 or budget_from");
      }
    }
    seen.push_back(e.id);
  }
}

SuiteSpec suite_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("suite spec must be a JSON object");
  SuiteSpec spec;
  try {
    spec.n_min = j.value("n_min", spec.n_min);
    spec.n_max = j.value("n_max", spec.n_max);
    spec.instances_per_n = j.value("instances_per_n", spec.instances_per_n);
    spec.master_seed = j.value("master_seed", spec.master_seed);
    const std::string gen = j.value("generator", std::string("random"));
    if (gen == "random") {
      spec.generator = InstanceGenerator::kRandom;
    } else if (gen == "monotone") {
      spec.generator = InstanceGenerator::kMonotone;
    } else {
      throw FormatError("unknown generator '" + gen + "'");
    }
    if (j.contains("workspace")) spec.generation.workspace = workspace_from_json(j.at("workspace"));
    spec.generation.radius = j.value("radius", spec.generation.radius);
    spec.generation.epsilon = j.value("epsilon", spec.generation.epsilon);
    spec.generation.attempt_budget = j.value("generation_budget", spec.generation.attempt_budget);
    spec.buffer_probes = j.value("buffer_probes", spec.buffer_probes);
    spec.record_wall_time = j.value("record_wall_time", spec.record_wall_time);
    if (j.contains("planners")) {
      for (const auto& p : j.at("planners")) spec.planners.push_back(planner_from_json(p));
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed suite spec: ") + e.what());
  }
  validate_suite(spec);
  return spec;
}

Json suite_to_json(const SuiteSpec& spec) {
  Json out = Json::object();
  out["n_min"] = spec.n_min;
  out["n_max"] = spec.n_max;
  out["instances_per_n"] = spec.instances_per_n;
  out["master_seed"] = spec.master_seed;
  out["generator"] = spec.generator == InstanceGenerator::kRandom ? "random" : "monotone";
  out["workspace"] = workspace_to_json(spec.generation.workspace);
  out["radius"] = spec.generation.radius;
  out["epsilon"] = spec.generation.epsilon;
  out["generation_budget"] = spec.generation.attempt_budget;
  out["buffer_probes"] = spec.buffer_probes;
  out["record_wall_time"] = spec.record_wall_time;
  Json planners = Json::array();
  for (const auto& p : spec.planners) planners.push_back(planner_to_json(p));
  out["planners"] = planners;
  return out;
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t n, std::size_t index) {
  return derive_seed(derive_seed(master_seed, n), index);
}

std::uint64_t stream_seed(std::uint64_t seed, SeedStream stream) {
  return derive_seed(seed, static_cast<std::uint64_t>(stream));
}

Instance make_suite_instance(const SuiteSpec& spec, std::size_t n, std::uint64_t seed) {
  Rng rng(stream_seed(seed, SeedStream::kGeneration));
  if (spec.generator == InstanceGenerator::kMonotone) {
    return gen_monotone_instance(n, spec.generation, rng).instance;
  }
  return gen_random_instance(n, spec.generation, rng);
}

namespace {

std::vector<BenchRecord> run_instance(const SuiteSpec& spec, std::size_t n, std::size_t index,
                                      const RunObserver& observer) {
  const std::uint64_t seed = instance_seed(spec.master_seed, n, index);
  std::vector<BenchRecord> out;
  auto blank = [&](const PlannerEntry& e) {
    BenchRecord r;
    r.planner = e.id;
    r.n_objects = n;
    r.seed = seed;
    r.epsilon = spec.generation.epsilon;
    r.c = e.spec.kind == PlannerKind::kMcts ? e.spec.mcts.exploration_c : kNaN;
    return r;
  };

  Instance inst;
  try {
    inst = make_suite_instance(spec, n, seed);
  } catch (const InfeasibleDensityError&) {
    for (const auto& e : spec.planners) {
      BenchRecord r = blank(e);
      r.instance_ok = false;
      out.push_back(r);
    }
    return out;
  }

  Rng probe(stream_seed(seed, SeedStream::kBufferProbe));
  const bool buffer = buffer_space_available(inst, probe, spec.buffer_probes);
  const std::uint64_t planner_seed = stream_seed(seed, SeedStream::kPlanner);

  std::map<std::string, std::uint64_t> checks_by_planner;
  for (const auto& e : spec.planners) {
    PlannerSpec ps = e.spec;
    if (e.budget_from) {
      const double scaled =
          std::ceil(static_cast<double>(checks_by_planner.at(*e.budget_from)) * e.budget_scale);
      ps.baseline.collision_budget = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(scaled));
    }
    const PlanResult res = run_planner(inst, ps, planner_seed);
    checks_by_planner[e.id] = res.collision_checks;

    BenchRecord r = blank(e);
    r.solved = res.solved;
    r.n_motions = res.plan.size();
    r.collision_checks = res.collision_checks;
    r.iterations = res.iterations;
    r.wall_time_ms = spec.record_wall_time ? res.wall_time_ms() : 0.0;
    r.buffer_available = buffer;
    if (observer) observer(inst, e, res, r);
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> run_suite(const SuiteSpec& spec, const RunOptions& options) {
  validate_suite(spec);
  if (spec.planners.empty()) return {};

  struct Task {
    std::size_t n;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (std::size_t n = spec.n_min; n <= spec.n_max; ++n) {
    for (std::size_t i = 0; i < spec.instances_per_n; ++i) tasks.push_back({n, i});
  }

  std::vector<std::vector<BenchRecord>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        slots[t] = run_instance(spec, tasks[t].n, tasks[t].index, options.observer);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < spec.planners.size(); ++i) order[spec.planners[i].id] = i;

  std::vector<BenchRecord> records;
  for (auto& s : slots) records.insert(records.end(), s.begin(), s.end());
  std::stable_sort(records.begin(), records.end(), [&](const BenchRecord& a, const BenchRecord& b) {
    const auto ka = std::make_tuple(order.at(a.planner), a.n_objects, a.seed);
    const auto kb = std::make_tuple(order.at(b.planner), b.n_objects, b.seed);
    return ka < kb;
  });
  return records;
}

double lower_median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

std::vector<Summary> aggregate(const std::vector<BenchRecord>& records) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  std::map<std::pair<std::string, std::size_t>, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.planner, r.n_objects);
    if (!groups.contains(key)) keys.push_back(key);
    groups[key].push_back(&r);
  }

  std::vector<Summary> out;
  for (const auto& key : keys) {
    const auto& group = groups[key];
    Summary s;
    s.planner = key.first;
    s.n_objects = key.second;
    s.runs = group.size();
    std::vector<double> motions;
    double checks = 0.0;
    double wall = 0.0;
    std::size_t solved = 0;
    std::size_t buffer = 0;
    for (const BenchRecord* r : group) {
      if (!r->instance_ok) continue;
      ++s.instances_ok;
      checks += static_cast<double>(r->collision_checks);
      wall += r->wall_time_ms;
      if (r->buffer_available) ++buffer;
      if (r->solved) {
        ++solved;
        motions.push_back(static_cast<double>(r->n_motions));
      }
    }
    if (s.instances_ok > 0) {
      const auto ok = static_cast<double>(s.instances_ok);
      s.success_rate = static_cast<double>(solved) / ok;
      s.mean_collision_checks = checks / ok;
      s.mean_wall_time_ms = wall / ok;
      s.buffer_fraction = static_cast<double>(buffer) / ok;
    } else {
      s.success_rate = s.mean_collision_checks = s.mean_wall_time_ms = s.buffer_fraction = kNaN;
    }
    if (motions.empty()) {
      s.mean_motions = s.median_motions = kNaN;
    } else {
      double sum = 0.0;
      for (double m : motions) sum += m;
      s.mean_motions = sum / static_cast<double>(motions.size());
      s.median_motions = lower_median(motions);
    }
    out.push_back(s);
  }
  return out;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "planner,n_objects,seed,solved,n_motions,collision_checks,iterations,wall_time_ms,"
         "epsilon,c,buffer_available,instance_ok\n";
  for (const auto& r : records) {
    out << r.planner << ',' << r.n_objects << ',' << r.seed << ',' << (r.solved ? 1 : 0) << ','
        << r.n_motions << ',' << r.collision_checks << ',' << r.iterations << ','
        << format_real(r.wall_time_ms) << ',' << format_real(r.epsilon) << ','
        << format_real(r.c) << ',' << (r.buffer_available ? 1 : 0) << ','
        << (r.instance_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string summaries_to_csv(const std::vector<Summary>& summaries) {
  std::ostringstream out;
  out << "planner,n_objects,runs,instances_ok,success_rate,mean_motions,median_motions,"
         "mean_collision_checks,mean_wall_time_ms,buffer_fraction\n";
  for (const auto& s : summaries) {
    out << s.planner << ',' << s.n_objects << ',' << s.runs << ',' << s.instances_ok << ','
        << format_real(s.success_rate) << ',' << format_real(s.mean_motions) << ','
        << format_real(s.median_motions) << ',' << format_real(s.mean_collision_checks) << ','
        << format_real(s.mean_wall_time_ms) << ',' << format_real(s.buffer_fraction) << '\n';
  }
  return out.str();
}

Json records_to_json(const std::vector<BenchRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) {
    Json j = Json::object();
    j["planner"] = r.planner;
    j["n_objects"] = r.n_objects;
    j["seed"] = r.seed;
    j["solved"] = r.solved;
    j["n_motions"] = r.n_motions;
    j["collision_checks"] = r.collision_checks;
    j["iterations"] = r.iterations;
    j["wall_time_ms"] = real_to_json(r.wall_time_ms);
    j["epsilon"] = real_to_json(r.epsilon);
    j["c"] = real_to_json(r.c);
    j["buffer_available"] = r.buffer_available;
    j["instance_ok"] = r.instance_ok;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<BenchRecord> records_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("records must be a JSON array");
  std::vector<BenchRecord> out;
  try {
    for (const auto& o : j) {
      BenchRecord r;
      r.planner = o.at("planner").get<std::string>();
      r.n_objects = o.at("n_objects").get<std::size_t>();
      r.seed = o.at("seed").get<std::uint64_t>();
      r.solved = o.at("solved").get<bool>();
      r.n_motions = o.at("n_motions").get<std::size_t>();
      r.collision_checks = o.at("collision_checks").get<std::uint64_t>();
      r.iterations = o.at("iterations").get<std::uint64_t>();
      r.wall_time_ms = real_from_json(o.at("wall_time_ms"));
      r.epsilon = real_from_json(o.at("epsilon"));
      r.c = real_from_json(o.at("c"));
      r.buffer_available = o.at("buffer_available").get<bool>();
      r.instance_ok = o.value("instance_ok", true);
      out.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what());
  }
  return out;
}

Json summaries_to_json(const std::vector<Summary>& summaries) {
  Json out = Json::array();
  for (const auto& s : summaries) {
    Json j = Json::object();
    j["planner"] = s.planner;
    j["n_objects"] = s.n_objects;
    j["runs"] = s.runs;
    j["instances_ok"] = s.instances_ok;
    j["success_rate"] = real_to_json(s.success_rate);
    j["mean_motions"] = real_to_json(s.mean_motions);
    j["median_motions"] = real_to_json(s.median_motions);
    j["mean_collision_checks"] = real_to_json(s.mean_collision_checks);
    j["mean_wall_time_ms"] = real_to_json(s.mean_wall_time_ms);
    j["buffer_fraction"] = real_to_json(s.buffer_fraction);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace rearrange
