#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsmc/sem/transition_system.hpp"

namespace vcsmc::driver {

/// Malformed driver input. `what()` names the file and, when known, the line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FailureKind { Ecu, Power, Bus, P2P, Composite };

const char* to_string(FailureKind k);
std::optional<FailureKind> parse_failure_kind(const std::string& s);

struct Failure {
  int index = 0;  // 1-based, file order
  std::string id;
  std::string variable;  // boolean in the template's main module
  FailureKind kind = FailureKind::Ecu;
};

struct FailureCatalog {
  std::vector<Failure> entries;
  std::vector<int> axes;  // positions in `entries` of injectable failures

  std::size_t axis_count() const { return axes.size(); }
  const Failure& axis(int i) const;  // 1-based axis number
};

/// CSV with header `index,id,variable,kind`. Lines starting with '#' and blank
/// lines are ignored.
FailureCatalog parse_failure_catalog(const std::string& text, const std::string& origin = "failures");
FailureCatalog load_failure_catalog(const std::string& path);

inline constexpr const char* kFatal = "FATAL";

struct TargetModeMatrix {
  std::size_t n = 0;
  std::vector<std::string> cells;  // row-major, rows = first failure

  const std::string& at(int row, int col) const;  // 1-based
  bool fatal(int row, int col) const { return at(row, col) == kFatal; }
};

/// CSV: a header row `,<axis id>...` followed by one row per axis
/// `<axis id>,<mode>|FATAL,...`. Axis ids must match the catalog's axes in
/// order. `modes` are the admissible mode names (empty: not checked).
TargetModeMatrix parse_target_matrix(const std::string& text, const FailureCatalog& catalog,
                                     const std::vector<std::string>& modes, const std::string& origin = "matrix");
TargetModeMatrix load_target_matrix(const std::string& path, const FailureCatalog& catalog,
                                    const std::vector<std::string>& modes);

enum class Applicability { None, Single, Double, All };

const char* to_string(Applicability a);

struct Spec {
  std::string name;
  Applicability applicability = Applicability::All;
  std::string formula;  // may contain {{TARGET_MODE}}, {{FAIL_A}}, {{FAIL_B}}
  std::string description;
  bool unbounded_liveness = false;  // can only end Inconclusive or Violated

  bool uses_target() const;
  bool applies_to_baseline() const;
  bool applies_to_single() const;
  bool applies_to_double() const;
};

struct SpecCatalog {
  std::vector<Spec> specs;
  std::vector<std::string> warnings;
};

struct Substitution {
  std::string target_mode;
  std::string fail_a;
  std::string fail_b;
};

/// Replaces the three placeholders; throws InputError on an unknown `{{...}}`.
std::string substitute(const std::string& text, const Substitution& sub);

/// Sectioned text:
///
///   [name]
///   applicability = none | single | double | all
///   formula = <LTL>
///   description = <free text>      (optional)
///
/// When `ts` is given every formula is parsed with probe substitutions
/// (first two catalog axes, first mode) and checked for unbounded liveness.
SpecCatalog parse_spec_catalog(const std::string& text, const sem::TransitionSystem* ts,
                               const FailureCatalog* catalog, const std::vector<std::string>& modes,
                               const std::string& origin = "specs");
SpecCatalog load_spec_catalog(const std::string& path, const sem::TransitionSystem* ts,
                              const FailureCatalog* catalog, const std::vector<std::string>& modes);

/// Symbols of the enumeration variable `mode_var` in `ts`.
std::vector<std::string> operation_modes(const sem::TransitionSystem& ts, const std::string& mode_var = "Mode");

std::string read_text_file(const std::string& path);

}  // namespace vcsmc::driver
