#pragma once

#include <string>
#include <vector>

#include "vcsmc/driver/inputs.hpp"

namespace vcsmc::driver {

/// Which cells of the matrix to run. Bounds are 1-based and inclusive.
struct PlanRange {
  enum class Kind { Cells, Singles, Full } kind = Kind::Full;
  int r1 = 0, c1 = 0, r2 = 0, c2 = 0;

  static PlanRange cells(int r1, int c1, int r2, int c2) { return {Kind::Cells, r1, c1, r2, c2}; }
  static PlanRange singles() { return {Kind::Singles}; }
  static PlanRange full() { return {Kind::Full}; }
};

/// One model instance to check. `col` is 0 for a single-failure row entry;
/// a diagonal cell (i, i) is a single-failure scenario for axis i as well.
struct PlannedTask {
  int row = 0;
  int col = 0;
  std::vector<int> axes;  // injected axes in occurrence order (1 or 2)
  std::string target_mode;
  bool fatal = false;

  bool is_pair() const { return axes.size() == 2; }
  std::string label() const;  // "combo_<row>_<col>"
};

struct BatchPlan {
  std::vector<PlannedTask> tasks;  // sorted by (row, col)
};

/// Full plan: N singles plus all N * N cells.
BatchPlan plan_batch(const FailureCatalog& catalog, const TargetModeMatrix& matrix, const PlanRange& range);

struct InjectionWindow {
  int start_min = 15;
  int start_max = 40;
};

inline constexpr const char* kInjectionBegin = "-- @injection-begin";
inline constexpr const char* kInjectionEnd = "-- @injection-end";

/// Rewrites the marked region of the template's main module. Axes not in
/// `axes` become constant FALSE defines. Each injected failure X gets
///
///   inj_go_X   armed nondeterministically while the step counter is in
///              [start_min - 2, start_max - 2], at most once
///   X          rises the step after inj_go_X, then persists or ends
///              nondeterministically
///   inj_occ_X  latched once X has been active; blocks re-activation
///
/// so X is never active before start_min, may first rise at any step in
/// [start_min, start_max], and rises at most once. For a pair (A, B), B can
/// only rise together with or after A. Overlap is unconstrained.
///
/// `{{...}}` placeholders in the template are substituted too. Throws
/// InputError when the markers are missing or the window is invalid.
std::string instantiate_model(const std::string& tmpl, const FailureCatalog& catalog, const std::vector<int>& axes,
                              const InjectionWindow& window, const std::string& target_mode = "");

/// Formulas that the instance for `axes` must satisfy by construction, each
/// paired with a short name.
std::vector<std::pair<std::string, std::string>> injection_assertions(const FailureCatalog& catalog,
                                                                      const std::vector<int>& axes,
                                                                      const InjectionWindow& window);

}  // namespace vcsmc::driver
