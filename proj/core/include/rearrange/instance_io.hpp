#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rearrange/arrangement.hpp"
#include "rearrange/plan_result.hpp"

namespace rearrange {

/// Key order is preserved on output.
using Json = nlohmann::ordered_json;

/// Raised on malformed documents.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Json point_to_json(Point2 p);
Point2 point_from_json(const Json& j);

Json arrangement_to_json(const Arrangement& a);
Arrangement arrangement_from_json(const Json& j);

Json workspace_to_json(const Workspace& ws);
Workspace workspace_from_json(const Json& j);

/// {workspace, radius, epsilon, initial, target}, lengths in meters.
Json instance_to_json(const Instance& inst);
/// Parses and validates; throws FormatError or std::invalid_argument.
Instance instance_from_json(const Json& j);

Json motion_to_json(const Motion& m);
Motion motion_from_json(const Json& j);

Json plan_to_json(const Plan& plan);
Plan plan_from_json(const Json& j);

/// {solved, n_motions, iterations, collision_checks, wall_time_ms, plan}.
/// With `include_timing` false the wall time is written as 0 so that the
/// document is a pure function of (instance, config).
Json plan_result_to_json(const PlanResult& r, bool include_timing = true);
PlanResult plan_result_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace rearrange
