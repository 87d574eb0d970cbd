#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcsmc/driver/inputs.hpp"
#include "vcsmc/driver/plan.hpp"
#include "vcsmc/sem/trace.hpp"

namespace vcsmc::driver {

enum class Outcome { Pass, Violated, Inconclusive, Timeout, Error };

const char* to_string(Outcome o);

struct BatchInputs {
  std::string template_text;
  FailureCatalog catalog;
  TargetModeMatrix matrix;
  SpecCatalog specs;
};

/// Reads and cross-checks the four input files.
BatchInputs load_batch_inputs(const std::string& template_path, const std::string& failures_path,
                              const std::string& matrix_path, const std::string& specs_path,
                              const std::string& mode_var = "Mode");

struct BatchOptions {
  int bound = 70;
  InjectionWindow window;
  unsigned workers = 1;
  std::optional<std::chrono::milliseconds> timeout;  // per (task, spec) check
  bool baseline = true;  // also check the failure-free instance
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct SpecResult {
  std::string spec;
  std::string formula;  // after substitution
  Outcome outcome = Outcome::Error;
  int violation_step = -1;
  int error_step = -1;
  std::string detail;
  sem::Trace trace;
  std::shared_ptr<const sem::TransitionSystem> ts;  // set for VIOLATED rows
  std::string trace_path;  // relative to the report directory, set by write_report
  double wall_ms = 0;
  std::size_t nodes = 0;
};

struct TaskResult {
  PlannedTask task;  // row = col = 0 for the baseline
  std::vector<std::string> failures;  // injected variables
  std::vector<SpecResult> specs;
  std::vector<std::string> skipped;  // target-mode specs of FATAL cells
  double wall_ms = 0;
};

struct BatchReport {
  int bound = 0;
  InjectionWindow window;
  std::optional<TaskResult> baseline;
  std::vector<TaskResult> tasks;
  double wall_ms = 0;

  std::map<Outcome, std::size_t> counts() const;
};

/// Checks every (task, applicable spec) unit on `options.workers` threads.
/// Results are merged in (row, col, spec) order, so everything except the
/// timing fields is independent of the worker count.
BatchReport run_batch(const BatchInputs& inputs, const BatchPlan& plan, const BatchOptions& options);

/// Writes summary.txt, report.json and cex/<combo>/<spec>.{trace,json}.
/// Fills in SpecResult::trace_path.
void write_report(BatchReport& report, const std::string& dir);

std::string report_json(const BatchReport& report);
std::string report_summary(const BatchReport& report);

/// 0 when every unit passed; 2 on any ERROR, TIMEOUT or INCONCLUSIVE (undecided);
/// otherwise 1 on any VIOLATED.
int exit_code(const BatchReport& report);

}  // namespace vcsmc::driver
