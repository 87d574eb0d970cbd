#pragma once

#include <string_view>

#include "vcsmc/ltl/formula.hpp"
#include "vcsmc/sem/transition_system.hpp"

namespace vcsmc::ltl {

/// Parses a specification over the qualified names of `ts`.
///
/// Precedence, tightest first: unary (! X F G O Y H, F[a,b], G[a,b]);
/// U and R (right associative); &; |; -> (right associative). Atoms are model
/// expressions up to comparison level, so `F[0,5] Mode = Normal` reads as
/// F[0,5] (Mode = Normal). The letters G F X U R O Y H are operators and
/// cannot name variables inside a specification.
///
/// Throws model::ParseError on syntax errors and model::ElaborationError on
/// unresolved or non-boolean atoms.
FormulaRef parse_ltl(std::string_view text, const sem::TransitionSystem& ts);

}  // namespace vcsmc::ltl
