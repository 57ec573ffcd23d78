#pragma once

// Scenario files: a JSON document declaring a group, representations,
// systems, frames, channels and frame morphisms by name, followed by an
// ordered list of verification tasks.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "relframe/frame.hpp"
#include "relframe/relativization.hpp"
#include "relframe/system.hpp"

namespace relframe {

using Json = nlohmann::ordered_json;

/// Environment variable consulted for the default tolerance.
inline constexpr const char* kToleranceEnv = "RELFRAME_TOLERANCE";

/// Command-line overrides; each wins over the scenario's own options.
struct ScenarioSettings {
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

/// The tolerance in the environment, if set. Throws ValidationError when
/// the value is not a positive finite number.
std::optional<double> environment_tolerance();

// Matrix literals: row-major list of rows of [re, im] pairs.
ComplexMatrix parse_matrix_literal(const Json& value, const std::string& context);
Json matrix_literal(const ComplexMatrix& m, int decimals = 12);

struct TaskSpec {
  std::string id;
  std::string kind;
  Json body;         // the task object as written
  std::string path;  // e.g. /tasks/3
};

struct ScenarioSpec {
  std::string name;
  Json document;
  double tolerance = kDefaultTolerance;
  std::optional<std::uint64_t> seed;
  int samples = 32;

  std::shared_ptr<const FiniteGroup> group;
  std::map<std::string, UnitaryRep> representations;
  std::map<std::string, SystemPtr> systems;
  std::map<std::string, FramePtr> frames;
  std::map<std::string, ChannelMap> channels;
  std::map<std::string, FrameMorphism> frame_morphisms;
  std::vector<TaskSpec> tasks;

  SamplingOptions sampling() const { return {seed.value_or(kDefaultSeed), samples}; }
};

/// Parses and fully resolves a scenario. Errors carry the line and column
/// of the offending key: SyntaxError, UnknownReference, DimensionMismatch,
/// ValidationError, or the kind raised by an eager constructor.
ScenarioSpec parse_scenario(std::string_view text, const ScenarioSettings& settings = {});
ScenarioSpec load_scenario(const std::string& path, const ScenarioSettings& settings = {});

/// Canonical text of the declarations; parsing it gives an equivalent spec.
std::string serialize_scenario(const ScenarioSpec& spec);

enum class TaskStatus { Pass, Fail, Error };
std::string_view to_string(TaskStatus status);

struct TaskEntry {
  std::string id;
  std::string kind;
  TaskStatus status = TaskStatus::Pass;
  double max_deviation = 0.0;
  std::string message;
  std::vector<CheckItem> items;
  std::vector<Witness> witnesses;
  double wall_ms = 0.0;
};

struct RunReport {
  std::string scenario;
  double tolerance = kDefaultTolerance;
  std::optional<std::uint64_t> seed;
  std::vector<TaskEntry> entries;

  int count(TaskStatus status) const;
  /// 0 all pass, 1 any fail, 2 any error.
  int exit_code() const;
};

/// Runs every task in order; a failing or erroring task becomes a report
/// entry and does not stop the run.
RunReport run_scenario(const ScenarioSpec& spec);

/// "human" (aligned table) or "machine" (JSON). Throws UnknownFormat.
std::string emit_report(const RunReport& report, std::string_view format);

}  // namespace relframe
