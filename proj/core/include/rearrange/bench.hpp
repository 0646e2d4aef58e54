#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rearrange/arrangement.hpp"
#include "rearrange/executor.hpp"
#include "rearrange/instance_io.hpp"

namespace rearrange {

enum class InstanceGenerator { kRandom, kMonotone };

struct PlannerEntry {
  std::string id;
  PlannerSpec spec;
  /// randperm only: use the collision checks this planner (listed earlier)
  /// spent on the same instance as the budget, scaled by budget_scale.
  std::optional<std::string> budget_from;
  double budget_scale = 1.0;
};

struct SuiteSpec {
  std::size_t n_min = 1;
  std::size_t n_max = 5;
  std::size_t instances_per_n = 10;
  std::uint64_t master_seed = 0;
  InstanceGenerator generator = InstanceGenerator::kRandom;
  GenerationParams generation;
  int buffer_probes = kDefaultBufferProbes;
  std::vector<PlannerEntry> planners;
  /// When false every wall time is recorded as 0, making output reproducible byte for byte.
  bool record_wall_time = true;
};

/// Throws std::invalid_argument on inconsistent specs (unknown budget_from, n_min > n_max, ...).
void validate_suite(const SuiteSpec& spec);

SuiteSpec suite_from_json(const Json& j);
Json suite_to_json(const SuiteSpec& spec);

/// Seed of instance `index` among those with `n` objects. Counter-based, so
/// it does not depend on the planner list or on execution order.
std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t n, std::size_t index);

/// Streams derived from an instance seed.
enum class SeedStream : std::uint64_t { kGeneration = 0, kBufferProbe = 1, kPlanner = 2 };
std::uint64_t stream_seed(std::uint64_t instance_seed, SeedStream stream);

/// The instance a suite builds from `seed`. Throws InfeasibleDensityError.
Instance make_suite_instance(const SuiteSpec& spec, std::size_t n, std::uint64_t seed);

struct BenchRecord {
  std::string planner;
  std::size_t n_objects = 0;
  std::uint64_t seed = 0;
  bool solved = false;
  std::size_t n_motions = 0;
  std::uint64_t collision_checks = 0;
  std::uint64_t iterations = 0;
  double wall_time_ms = 0.0;
  double epsilon = 0.0;
  /// NaN for planners without an exploration constant.
  double c = 0.0;
  bool buffer_available = false;
  /// False when instance generation hit the density budget; metrics are then zero.
  bool instance_ok = true;
};

/// Called once per (planner, instance) run, possibly from several threads at once.
using RunObserver =
    std::function<void(const Instance&, const PlannerEntry&, const PlanResult&, const BenchRecord&)>;

struct RunOptions {
  unsigned jobs = 1;
  RunObserver observer;
};

/// Runs every planner on every instance. Records come back sorted by
/// (planner order in the spec, n, seed) whatever the completion order.
std::vector<BenchRecord> run_suite(const SuiteSpec& spec, const RunOptions& options = {});

struct Summary {
  std::string planner;
  std::size_t n_objects = 0;
  std::size_t runs = 0;
  std::size_t instances_ok = 0;
  double success_rate = 0.0;
  double mean_motions = 0.0;    // over solved runs; NaN if none
  double median_motions = 0.0;  // lower median over solved runs; NaN if none
  double mean_collision_checks = 0.0;
  double mean_wall_time_ms = 0.0;
  double buffer_fraction = 0.0;
};

/// Lower median: element (k - 1) / 2 of the sorted values.
double lower_median(std::vector<double> values);

/// One summary per (planner, n) in record order. Records whose instance
/// failed to generate count toward `runs` but not toward any rate or mean.
std::vector<Summary> aggregate(const std::vector<BenchRecord>& records);

std::string records_to_csv(const std::vector<BenchRecord>& records);
std::string summaries_to_csv(const std::vector<Summary>& summaries);
Json records_to_json(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_json(const Json& j);
Json summaries_to_json(const std::vector<Summary>& summaries);

/// "%.6g"; "nan" for NaN.
std::string format_real(double v);

}  // namespace rearrange
