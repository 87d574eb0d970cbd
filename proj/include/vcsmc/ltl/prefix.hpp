#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcsmc/ltl/formula.hpp"
#include "vcsmc/sem/trace.hpp"

namespace vcsmc::ltl {

enum class PrefixVerdict { Holds, Violated, Inconclusive };

const char* to_string(PrefixVerdict v);

/// Kleene truth value; Unknown means the prefix is too short to decide.
enum class Kleene : std::uint8_t { False, True, Unknown };

Kleene k_not(Kleene a);
Kleene k_and(Kleene a, Kleene b);
Kleene k_or(Kleene a, Kleene b);

/// Value of `f` at every position of a finite, loop-free prefix. Positions
/// beyond the prefix are unknown, so X, F, G, U and R become Unknown when
/// their outcome depends on them; past operators are always decided.
std::vector<Kleene> evaluate(const Formula& f, std::span<const sem::State> prefix);

/// Verdict at position 0. An empty prefix is Inconclusive.
PrefixVerdict holds_on_prefix(const Formula& f, std::span<const sem::State> prefix);
PrefixVerdict holds_on_prefix(const Formula& f, const sem::Trace& trace);

}  // namespace vcsmc::ltl
