#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsmc/sem/transition_system.hpp"

namespace vcsmc::sem {

struct Trace {
  std::vector<State> states;
  std::optional<std::size_t> loop_back;  // lasso traces; unused by the checker
};

/// Resolves one nondeterministic choice: returns an index into `options`.
/// `step` is the index of the state being produced (0 for the initial state).
using Chooser = std::function<std::size_t(std::size_t step, int var, std::span<const Value> options)>;

Chooser first_choice();
Chooser seeded_random(std::uint64_t seed);
/// Plays back per-step overrides: `script(step, var)` returns the wanted value
/// or nullopt to fall back to the first option.
Chooser scripted(std::function<std::optional<Value>(std::size_t step, int var)> script);

class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t step, const std::string& message)
      : std::runtime_error("step " + std::to_string(step) + ": " + message), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Runs `steps` synchronous steps. Returns steps + 1 states.
Trace simulate(const TransitionSystem& ts, std::size_t steps, const Chooser& chooser = first_choice());

/// `step <i>` blocks of `name = value` lines sorted by qualified name.
std::string trace_to_text(const TransitionSystem& ts, const Trace& trace);
Trace trace_from_text(const TransitionSystem& ts, const std::string& text);

/// {"steps": [{"index": i, "values": {name: value, ...}}, ...]}
std::string trace_to_json(const TransitionSystem& ts, const Trace& trace);
Trace trace_from_json(const TransitionSystem& ts, const std::string& text);

}  // namespace vcsmc::sem
