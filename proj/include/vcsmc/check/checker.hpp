#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "vcsmc/ltl/formula.hpp"
#include "vcsmc/ltl/prefix.hpp"
#include "vcsmc/sem/trace.hpp"
#include "vcsmc/sem/transition_system.hpp"

namespace vcsmc::check {

struct CheckTask {
  const sem::TransitionSystem* ts = nullptr;
  ltl::FormulaRef formula;
  int bound = 70;
  std::optional<std::chrono::milliseconds> timeout;
  const std::atomic<bool>* cancel = nullptr;  // optional external stop flag
};

enum class VerdictKind { NoCounterexample, Counterexample, ModelError, Timeout };

const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::NoCounterexample;
  int bound = 0;

  // Counterexample
  sem::Trace trace;  // over the task's variables; length violation_step + 1
  std::string formula;
  int violation_step = -1;

  // ModelError
  int error_step = -1;
  std::string error;

  // NoCounterexample: every path of length bound + 1 satisfies the formula
  // already on its prefix (e.g. a bounded property fully inside the bound).
  bool holds_on_all_paths = false;

  double elapsed_ms = 0;
  std::size_t nodes = 0;  // search nodes (checker) or paths (oracle)
};

/// Bounded counterexample search. Explores, layer by layer, pairs of a
/// reachable state and the residual obligation left by formula progression;
/// past operators are first compiled into monitor variables. Finds a
/// shortest violating prefix among all initialized paths with at most
/// bound + 1 states. If a poisoned successor (out-of-domain value) occurs at
/// depth d and no violation exists at a depth < d, a ModelError at d is
/// reported instead.
Verdict check_bounded(const CheckTask& task);

struct OracleCaps {
  std::size_t max_paths = 200000;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Test oracle: enumerates every initialized path and evaluates the formula
/// (past operators included) with holds_on_prefix. Same verdict contract as
/// check_bounded.
Verdict brute_force_check(const CheckTask& task, const OracleCaps& caps = {});

class InvalidTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Re-checks initial state and transition membership of every step, then
/// evaluates the formula on the trace.
ltl::PrefixVerdict replay_counterexample(const sem::TransitionSystem& ts, const sem::Trace& trace,
                                         const ltl::Formula& formula);

}  // namespace vcsmc::check
