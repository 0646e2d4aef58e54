#include "rearrange/instance_io.hpp"

#include <cmath>
#include <fstream>

namespace rearrange {

namespace {

double number_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw FormatError(std::string("missing or non-numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

Json point_to_json(Point2 p) { return Json::array({p.x, p.y}); }

Point2 point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("a point must be a two-element numeric array [x, y]");
  }
  return Point2{j[0].get<double>(), j[1].get<double>()};
}

Json arrangement_to_json(const Arrangement& a) {
  Json out = Json::array();
  for (const Point2& p : a) out.push_back(point_to_json(p));
  return out;
}

Arrangement arrangement_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("an arrangement must be an array of points");
  Arrangement a;
  a.reserve(j.size());
  for (const auto& p : j) a.push_back(point_from_json(p));
  return a;
}

Json workspace_to_json(const Workspace& ws) {
  Json out = Json::object();
  out["x_min"] = ws.x_min;
  out["x_max"] = ws.x_max;
  out["y_min"] = ws.y_min;
  out["y_max"] = ws.y_max;
  return out;
}

Workspace workspace_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("workspace must be an object");
  return Workspace{number_at(j, "x_min"), number_at(j, "x_max"), number_at(j, "y_min"),
                   number_at(j, "y_max")};
}

Json instance_to_json(const Instance& inst) {
  Json out = Json::object();
  out["workspace"] = workspace_to_json(inst.workspace);
  out["radius"] = inst.radius;
  out["epsilon"] = inst.epsilon;
  out["initial"] = arrangement_to_json(inst.initial);
  out["target"] = arrangement_to_json(inst.target);
  return out;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("instance document must be a JSON object");
  for (const char* key : {"workspace", "initial", "target"}) {
    if (!j.contains(key)) throw FormatError(std::string("instance is missing '") + key + "'");
  }
  Instance inst;
  inst.workspace = workspace_from_json(j.at("workspace"));
  inst.radius = number_at(j, "radius");
  inst.epsilon = number_at(j, "epsilon");
  inst.initial = arrangement_from_json(j.at("initial"));
  inst.target = arrangement_from_json(j.at("target"));
  validate_instance(inst);
  return inst;
}

Json motion_to_json(const Motion& m) {
  Json out = Json::object();
  out["object"] = m.object;
  out["pick"] = point_to_json(m.pick);
  out["place"] = point_to_json(m.place);
  return out;
}

Motion motion_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("object") || !j.at("object").is_number_unsigned()) {
    throw FormatError("a motion needs a non-negative integer 'object'");
  }
  if (!j.contains("pick") || !j.contains("place")) {
    throw FormatError("a motion needs 'pick' and 'place'");
  }
  return Motion{j.at("object").get<std::size_t>(), point_from_json(j.at("pick")),
                point_from_json(j.at("place"))};
}

Json plan_to_json(const Plan& plan) {
  Json out = Json::array();
  for (const Motion& m : plan) out.push_back(motion_to_json(m));
  return out;
}

Plan plan_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("a plan must be an array of motions");
  Plan plan;
  for (const auto& m : j) plan.push_back(motion_from_json(m));
  return plan;
}

Json plan_result_to_json(const PlanResult& r, bool include_timing) {
  Json out = Json::object();
  out["solved"] = r.solved;
  out["n_motions"] = r.plan.size();
  out["iterations"] = r.iterations;
  out["collision_checks"] = r.collision_checks;
  out["wall_time_ms"] = include_timing ? r.wall_time_ms() : 0.0;
  out["plan"] = plan_to_json(r.plan);
  return out;
}

PlanResult plan_result_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("plan")) throw FormatError("plan result needs a 'plan' array");
  PlanResult r;
  r.solved = j.value("solved", false);
  r.plan = plan_from_json(j.at("plan"));
  r.iterations = j.value("iterations", std::uint64_t{0});
  r.collision_checks = j.value("collision_checks", std::uint64_t{0});
  const double ms = j.value("wall_time_ms", 0.0);
  r.wall_time = std::chrono::nanoseconds(static_cast<std::int64_t>(std::llround(ms * 1e6)));
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace rearrange
