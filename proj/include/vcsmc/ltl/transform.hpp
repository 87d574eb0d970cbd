#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vcsmc/ltl/formula.hpp"
#include "vcsmc/sem/transition_system.hpp"

namespace vcsmc::ltl {

class UnsupportedFormula : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PastElimination {
  FormulaRef formula;        // past-free
  sem::TransitionSystem ts;  // input system plus one monitor per latch
  std::vector<int> latches;  // monitor indices, in creation order
  std::vector<std::string> sources;  // canonical text of each latch's subformula
};

/// Replaces every distinct past subformula (O, Y, H; nested ones included)
/// by a boolean latch variable whose value at step t equals the subformula's
/// value at t:
///   O p:  init p,     next latch | p'
///   H p:  init p,     next latch & p'
///   Y p:  init FALSE, next p
/// where p' is p read on the successor state. Structurally equal subformulas
/// share one latch. A latch over a plain identifier `v` is named `O_v` (resp.
/// `Y_v`, `H_v`); others are `past_<k>`.
///
/// Throws UnsupportedFormula for a past operator over a future operator.
PastElimination eliminate_past(const FormulaRef& f, const sem::TransitionSystem& ts);

/// Rewrites F[a,b] and G[a,b] into X chains:
///   F[a,b] p = X^a (p | X (p | ... X p))   with b - a nested X
FormulaRef expand_bounded(const FormulaRef& f);

/// True if some F or U occurs under even negation depth, or some G or R under
/// odd depth: such formulas can never be Holds on a finite prefix.
bool has_unbounded_liveness(const Formula& f);

/// Converts a formula without temporal operators into an expression.
sem::ExprRef to_state_expr(const Formula& f);

}  // namespace vcsmc::ltl
