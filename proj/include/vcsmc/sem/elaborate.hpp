#pragma once

#include <vector>

#include "vcsmc/model/ast.hpp"
#include "vcsmc/model/diagnostic.hpp"
#include "vcsmc/sem/transition_system.hpp"

namespace vcsmc::sem {

/// Expands the instance tree rooted at `main` into a flat system.
///
/// Parameters are bound by expression aliasing: every occurrence of a
/// parameter is replaced by the caller's argument, elaborated in the caller's
/// scope and read on the current state. A parameter bound to an instance gives
/// dotted access to that instance's variables and defines. Defines are inlined.
///
/// Throws model::ElaborationError on the first static error. When `sink` is
/// given, errors in individual rules and defines are collected there instead
/// and elaboration continues; the returned system is then incomplete.
TransitionSystem elaborate(const model::ModelAst& ast,
                           std::vector<model::Diagnostic>* sink = nullptr);

/// Parses and elaborates in one go (throws ParseError / ElaborationError).
TransitionSystem load_model(std::string_view source);

/// Elaborates an expression over the flat system's qualified names (used for
/// LTL atoms and auxiliary assertions). Names resolve to variables, then to
/// qualified defines, then to enumeration symbols.
ExprRef resolve_expression(const TransitionSystem& ts, const model::Expr& e);

}  // namespace vcsmc::sem
