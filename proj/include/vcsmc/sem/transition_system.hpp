#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcsmc/model/ast.hpp"
#include "vcsmc/sem/expr.hpp"

namespace vcsmc::sem {

struct Domain {
  TypeKind kind = TypeKind::Bool;
  Value lo = 0;  // IntRange bounds
  Value hi = 1;
  std::vector<Value> values;  // every admissible value, in declaration order

  bool contains(Value v) const;
  Type type() const;
};

struct Variable {
  std::string name;  // qualified: instance path + local name
  Domain domain;
  /// Monitor variables are appended by past-operator elimination. Their rules
  /// are deterministic and may read the successor values of ordinary variables.
  bool monitor = false;
};

enum class RuleKind { Init, Next };

struct ChoicePoint {
  int var = -1;
  RuleKind rule = RuleKind::Next;
  model::SourceSpan span;
};

/// Flat synchronous system. Immutable after elaboration; safe to share.
struct TransitionSystem {
  std::vector<Variable> vars;
  std::vector<ExprRef> init_rules;  // nullptr: unconstrained
  std::vector<ExprRef> next_rules;  // nullptr: free, re-chosen every step
  std::vector<std::string> next_text;
  std::vector<ChoicePoint> choice_points;
  std::map<std::string, ExprRef> defines;  // qualified define name -> expression
  std::shared_ptr<SymbolTable> symbols = std::make_shared<SymbolTable>();
  std::vector<int> init_order;  // ordinary vars ordered by init-rule dependencies
  int step_duration_ms = 10;

  std::optional<int> find(const std::string& qualified_name) const;
  std::string format_value(int var, Value v) const;
  std::optional<Value> parse_value(int var, const std::string& text) const;
  std::size_t ordinary_count() const;

  /// Adds a monitor variable; returns its index. Monitor init rules read the
  /// current state (earlier monitors already filled in).
  int add_monitor(const std::string& name, ExprRef init, ExprRef next);

  std::unordered_map<std::string, int> index;
};

/// Runtime model error: a rule produced a value outside its variable domain.
struct ModelFault {
  int var = -1;
  Value value = 0;
  std::string rule;  // offending right-hand side
  std::string message;
};

struct Successors {
  std::vector<State> states;
  std::optional<ModelFault> fault;
};

/// Enumerates states satisfying the init rules in lexicographic choice order.
void for_each_initial_state(const TransitionSystem& ts,
                            const std::function<void(const State&)>& visit);
std::vector<State> initial_states(const TransitionSystem& ts);

/// All one-step successors (cartesian expansion of choices and free variables,
/// first variable most significant). Out-of-domain options are dropped from
/// `states` and reported in `fault`.
Successors successors(const TransitionSystem& ts, const State& s);

/// Admissible initial values of `var` given the already-chosen values in
/// `partial` (variables earlier in init_order).
void init_options(const TransitionSystem& ts, int var, const State& partial,
                  std::vector<Value>& out);

/// Per-variable option lists for the step from `s`; used by enumeration,
/// simulation and replay. Returns the first fault if any option is out of domain.
std::optional<ModelFault> next_options(const TransitionSystem& ts, const State& s,
                                       std::vector<std::vector<Value>>& options);
/// Fills monitor values of `next` from `current`.
void update_monitors(const TransitionSystem& ts, const State& current, State& next);
void init_monitors(const TransitionSystem& ts, State& state);

bool is_initial(const TransitionSystem& ts, const State& s);
bool is_successor(const TransitionSystem& ts, const State& from, const State& to);
bool in_domain(const TransitionSystem& ts, const State& s);

Value eval_expr(const ExprRef& e, const State& s);

}  // namespace vcsmc::sem
