#include "rearrange/executor.hpp"

#include <algorithm>

namespace rearrange {

Arrangement apply_perturbation(const Arrangement& state, const Perturbation& p, double radius,
                               const Workspace& ws) {
  if (p.object >= state.size()) {
    throw PerturbationError("perturbation targets unknown object " + std::to_string(p.object));
  }
  CollisionCounter unused;
  if (!is_placement_valid(Obstacles(state, p.object), p.new_position, radius, ws, unused)) {
    throw PerturbationError("perturbation of object " + std::to_string(p.object) +
                            " at step " + std::to_string(p.trigger_step) +
                            " lands on an occupied or out-of-workspace position");
  }
  Arrangement next = state;
  next[p.object] = p.new_position;
  return next;
}

void validate_schedule(const Instance& inst, const std::vector<Perturbation>& schedule) {
  for (const Perturbation& p : schedule) {
    if (p.object >= inst.size()) {
      throw PerturbationError("perturbation targets unknown object " + std::to_string(p.object));
    }
    if (!in_workspace(p.new_position, inst.radius, inst.workspace)) {
      throw PerturbationError("perturbation of object " + std::to_string(p.object) +
                              " places it outside the workspace");
    }
  }
}

PlanResult run_planner(const Instance& inst, const PlannerSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case PlannerKind::kMcts: {
      SearchConfig cfg = spec.mcts;
      cfg.seed = seed;
      return mcts_plan(inst, cfg);
    }
    case PlannerKind::kBaseline: {
      BaselineConfig cfg = spec.baseline;
      cfg.seed = seed;
      return baseline_plan(inst, cfg);
    }
    case PlannerKind::kRandperm: {
      BaselineConfig cfg = spec.baseline;
      cfg.seed = seed;
      return randperm_plan(inst, cfg);
    }
  }
  throw ContractViolation("run_planner: unknown planner kind");
}

std::uint64_t default_max_steps(std::size_t n_objects, std::size_t n_perturbations) {
  return 2 * n_objects + 5 * n_perturbations;
}

namespace {

Arrangement observe(const Arrangement& truth, double noise, Rng& rng) {
  if (noise <= 0.0) return truth;
  Arrangement seen = truth;
  for (Point2& p : seen) {
    p.x += rng.uniform(-noise, noise);
    p.y += rng.uniform(-noise, noise);
  }
  return seen;
}

}  // namespace

ExecTrace run_closed_loop(const Instance& inst, const ClosedLoopConfig& config) {
  validate_instance(inst);
  validate_schedule(inst, config.perturbations);
  const std::uint64_t max_steps = config.max_steps > 0
                                      ? config.max_steps
                                      : default_max_steps(inst.size(), config.perturbations.size());

  Rng noise_rng = Rng(config.seed).split(0xfeed);
  ExecTrace trace;
  Arrangement state = inst.initial;

  for (std::uint64_t step = 0;; ++step) {
    ExecStep record;
    record.index = step;
    for (const Perturbation& p : config.perturbations) {
      if (p.trigger_step != step) continue;
      state = apply_perturbation(state, p, inst.radius, inst.workspace);
      record.perturbations.push_back(p);
    }
    record.before = state;

    auto finish = [&](bool success, std::string reason) {
      trace.steps.push_back(std::move(record));
      trace.success = success;
      trace.stop_reason = std::move(reason);
    };

    if (is_solved(state, inst.target, inst.epsilon)) {
      finish(true, "solved");
      break;
    }
    if (step >= max_steps) {
      finish(false, "step limit reached");
      break;
    }

    Instance sub = inst;
    sub.initial = observe(state, config.observation_noise, noise_rng);
    PlanResult planned;
    try {
      planned = run_planner(sub, config.planner, derive_seed(config.seed, step));
    } catch (const std::invalid_argument& e) {
      // Noisy observations can look like an invalid arrangement.
      finish(false, std::string("planner rejected observation: ") + e.what());
      break;
    }
    ++trace.replans;
    record.planned_length = planned.plan.size();
    if (!planned.solved || planned.plan.empty()) {
      finish(false, "planner failed");
      break;
    }

    // The planner saw `sub.initial`; the pick is re-anchored on the true state.
    Motion m = planned.plan.front();
    m.pick = state[m.object];
    CollisionCounter unused;
    if (is_placement_valid(Obstacles(state, m.object), m.place, inst.radius, inst.workspace,
                           unused)) {
      state = apply_motion(state, m);
      record.motion = m;
      ++trace.total_motions;
    }
    trace.steps.push_back(std::move(record));
  }

  trace.final_state = state;
  trace.final_reward = reward(state, inst.target, inst.epsilon);
  return trace;
}

}  // namespace rearrange

namespace rearrange {

Json perturbation_to_json(const Perturbation& p) {
  Json out = Json::object();
  out["trigger_step"] = p.trigger_step;
  out["object"] = p.object;
  out["new_position"] = point_to_json(p.new_position);
  return out;
}

Perturbation perturbation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("trigger_step") || !j.contains("object") ||
      !j.contains("new_position")) {
    throw FormatError("a perturbation needs trigger_step, object and new_position");
  }
  if (!j.at("trigger_step").is_number_unsigned() || !j.at("object").is_number_unsigned()) {
    throw FormatError("perturbation trigger_step and object must be non-negative integers");
  }
  return Perturbation{j.at("trigger_step").get<std::uint64_t>(), j.at("object").get<std::size_t>(),
                      point_from_json(j.at("new_position"))};
}

std::vector<Perturbation> schedule_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("perturbations") ? j.at("perturbations") : j;
  if (!list.is_array()) throw FormatError("perturbation schedule must be an array");
  std::vector<Perturbation> out;
  for (const auto& p : list) out.push_back(perturbation_from_json(p));
  return out;
}

std::string trace_to_jsonl(const ExecTrace& trace) {
  std::string out;
  for (const ExecStep& s : trace.steps) {
    Json line = Json::object();
    line["type"] = "step";
    line["step"] = s.index;
    Json perts = Json::array();
    for (const auto& p : s.perturbations) perts.push_back(perturbation_to_json(p));
    line["perturbations"] = perts;
    line["before"] = arrangement_to_json(s.before);
    line["motion"] = s.motion ? motion_to_json(*s.motion) : Json(nullptr);
    line["planned_length"] = s.planned_length;
    out += line.dump();
    out += '\n';
  }
  Json summary = Json::object();
  summary["type"] = "summary";
  summary["success"] = trace.success;
  summary["stop_reason"] = trace.stop_reason;
  summary["final_reward"] = trace.final_reward;
  summary["total_motions"] = trace.total_motions;
  summary["replans"] = trace.replans;
  summary["final_state"] = arrangement_to_json(trace.final_state);
  out += summary.dump();
  out += '\n';
  return out;
}

ExecTrace trace_from_jsonl(const std::string& text) {
  ExecTrace trace;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw FormatError(std::string("trace line is not valid JSON: ") + e.what());
    }
    const std::string type = j.value("type", std::string());
    if (type == "step") {
      ExecStep s;
      s.index = j.value("step", std::uint64_t{0});
      for (const auto& p : j.at("perturbations")) s.perturbations.push_back(perturbation_from_json(p));
      s.before = arrangement_from_json(j.at("before"));
      if (!j.at("motion").is_null()) s.motion = motion_from_json(j.at("motion"));
      s.planned_length = j.value("planned_length", std::size_t{0});
      trace.steps.push_back(std::move(s));
    } else if (type == "summary") {
      trace.success = j.value("success", false);
      trace.stop_reason = j.value("stop_reason", std::string());
      trace.final_reward = j.value("final_reward", std::size_t{0});
      trace.total_motions = j.value("total_motions", std::size_t{0});
      trace.replans = j.value("replans", std::size_t{0});
      trace.final_state = arrangement_from_json(j.at("final_state"));
    } else {
      throw FormatError("unknown trace line type '" + type + "'");
    }
  }
  return trace;
}

}  // namespace rearrange
