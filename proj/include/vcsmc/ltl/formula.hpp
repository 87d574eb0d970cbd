#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vcsmc/sem/expr.hpp"

namespace vcsmc::ltl {

enum class LtlOp {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  X,
  U,
  R,
  F,
  G,
  BoundedF,  // F[lo,hi]
  BoundedG,  // G[lo,hi]
  O,
  Y,
  H,
};

struct Formula;
using FormulaRef = std::shared_ptr<const Formula>;

/// Specification tree. Atoms carry an elaborated boolean expression bound to
/// one transition system plus their source text for printing.
struct Formula {
  LtlOp op = LtlOp::True;
  sem::ExprRef atom;
  std::string text;  // Atom only
  int lo = 0;        // bounded window
  int hi = 0;
  std::vector<FormulaRef> kids;
};

FormulaRef make_atom(sem::ExprRef expr, std::string text);
FormulaRef make_true();
FormulaRef make_false();
FormulaRef make_unary(LtlOp op, FormulaRef a);
FormulaRef make_binary(LtlOp op, FormulaRef a, FormulaRef b);
FormulaRef make_bounded(LtlOp op, int lo, int hi, FormulaRef a);

bool is_past(LtlOp op);
bool is_temporal(LtlOp op);
bool contains_past(const Formula& f);
bool contains_future(const Formula& f);

/// Fully parenthesized canonical text; equal strings mean equal formulas
/// over the same system.
std::string to_string(const Formula& f);

}  // namespace vcsmc::ltl
