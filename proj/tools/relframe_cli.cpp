// relframe: validate and run scenario files.
//
//   relframe validate <file>
//   relframe run <file> [--tolerance T] [--seed N] [--report human|machine] [--out PATH]
//
// Exit status: 0 all tasks pass, 1 some task fails, 2 input or runtime error.

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "relframe/errors.hpp"
#include "relframe/scenario.hpp"

namespace {

constexpr int kExitError = 2;

int validate(const std::string& path) {
  const relframe::ScenarioSpec spec = relframe::load_scenario(path);
  std::cout << path << ": ok (" << spec.tasks.size() << " task"
            << (spec.tasks.size() == 1 ? "" : "s") << ")\n";
  return 0;
}

int run(const std::string& path, const relframe::ScenarioSettings& settings,
        const std::string& format, const std::string& out_path) {
  if (format != "human" && format != "machine") {
    throw relframe::Error(relframe::ErrorKind::UnknownFormat,
                          "unknown report format '" + format + "' (expected human or machine)");
  }
  const relframe::ScenarioSpec spec = relframe::load_scenario(path, settings);
  if (format == "machine" && !spec.seed) {
    std::cerr << "error: machine reports need a seed (--seed or options.seed)\n";
    return kExitError;
  }
  const relframe::RunReport report = relframe::run_scenario(spec);
  const std::string text = relframe::emit_report(report, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitError;
    }
    out << text;
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativization calculus for quantum reference frames: scenario runner"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and resolve a scenario file");
  validate_cmd->add_option("file", validate_path, "Scenario file")->required();

  std::string run_path;
  std::string format = "human";
  std::string out_path;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  auto* run_cmd = app.add_subcommand("run", "Run every task of a scenario and print a report");
  run_cmd->add_option("file", run_path, "Scenario file")->required();
  run_cmd->add_option("--tolerance", tol, "Absolute tolerance (overrides the scenario and " +
                                              std::string(relframe::kToleranceEnv) + ")");
  run_cmd->add_option("--seed", seed, "Seed for randomized checks");
  run_cmd->add_option("--report", format, "Report format: human or machine");
  run_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*validate_cmd) return validate(validate_path);
    if (tol && (!(*tol > 0.0) || !std::isfinite(*tol))) {
      std::cerr << "error: --tolerance must be a positive number\n";
      return kExitError;
    }
    return run(run_path, relframe::ScenarioSettings{tol, seed}, format, out_path);
  } catch (const relframe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
