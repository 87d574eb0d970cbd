#include "vcsmc/sem/transition_system.hpp"

#include <algorithm>
#include <charconv>

namespace vcsmc::sem {

bool Domain::contains(Value v) const {
  if (kind == TypeKind::Int) return v >= lo && v <= hi;
  return std::find(values.begin(), values.end(), v) != values.end();
}

Type Domain::type() const {
  switch (kind) {
    case TypeKind::Bool: return Type::boolean();
    case TypeKind::Int: return Type::integer();
    case TypeKind::Enum: return Type::enumeration(values);
  }
  return Type::boolean();
}

std::optional<int> TransitionSystem::find(const std::string& name) const {
  auto it = index.find(name);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::string TransitionSystem::format_value(int var, Value v) const {
  const Domain& d = vars.at(static_cast<std::size_t>(var)).domain;
  switch (d.kind) {
    case TypeKind::Bool: return v ? "TRUE" : "FALSE";
    case TypeKind::Int: return std::to_string(v);
    case TypeKind::Enum: return symbols->name(v);
  }
  return "?";
}

std::optional<Value> TransitionSystem::parse_value(int var, const std::string& text) const {
  const Domain& d = vars.at(static_cast<std::size_t>(var)).domain;
  std::optional<Value> v;
  switch (d.kind) {
    case TypeKind::Bool:
      if (text == "TRUE") v = 1;
      if (text == "FALSE") v = 0;
      break;
    case TypeKind::Int: {
      Value parsed = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
      if (ec == std::errc() && ptr == text.data() + text.size()) v = parsed;
      break;
    }
    case TypeKind::Enum: v = symbols->find(text); break;
  }
  if (v && !d.contains(*v)) return std::nullopt;
  return v;
}

std::size_t TransitionSystem::ordinary_count() const {
  std::size_t n = 0;
  for (const auto& v : vars)
    if (!v.monitor) ++n;
  return n;
}

int TransitionSystem::add_monitor(const std::string& name, ExprRef init, ExprRef next) {
  int idx = static_cast<int>(vars.size());
  Variable v;
  v.name = name;
  v.domain.kind = TypeKind::Bool;
  v.domain.lo = 0;
  v.domain.hi = 1;
  v.domain.values = {0, 1};
  v.monitor = true;
  vars.push_back(std::move(v));
  init_rules.push_back(std::move(init));
  next_rules.push_back(std::move(next));
  next_text.emplace_back("monitor");
  index.emplace(name, idx);
  return idx;
}

void init_monitors(const TransitionSystem& ts, State& state) {
  for (std::size_t v = 0; v < ts.vars.size(); ++v)
    if (ts.vars[v].monitor) state[v] = eval(*ts.init_rules[v], state, {});
}

void update_monitors(const TransitionSystem& ts, const State& current, State& next) {
  for (std::size_t v = 0; v < ts.vars.size(); ++v)
    if (ts.vars[v].monitor) next[v] = eval(*ts.next_rules[v], current, next);
}

void init_options(const TransitionSystem& ts, int var, const State& partial,
                  std::vector<Value>& out) {
  out.clear();
  const Variable& v = ts.vars[static_cast<std::size_t>(var)];
  const ExprRef& rule = ts.init_rules[static_cast<std::size_t>(var)];
  if (!rule) {
    out = v.domain.values;
    return;
  }
  eval_choices(*rule, partial, {}, out);
  std::erase_if(out, [&](Value x) { return !v.domain.contains(x); });
}

namespace {

void enumerate_init(const TransitionSystem& ts, std::size_t depth, State& partial,
                    const std::function<void(const State&)>& visit) {
  if (depth == ts.init_order.size()) {
    State complete = partial;
    init_monitors(ts, complete);
    visit(complete);
    return;
  }
  int var = ts.init_order[depth];
  std::vector<Value> options;
  init_options(ts, var, partial, options);
  for (Value x : options) {
    partial[static_cast<std::size_t>(var)] = x;
    enumerate_init(ts, depth + 1, partial, visit);
  }
}

}  // namespace

void for_each_initial_state(const TransitionSystem& ts,
                            const std::function<void(const State&)>& visit) {
  State partial(ts.vars.size(), 0);
  for (std::size_t v = 0; v < ts.vars.size(); ++v)
    if (!ts.vars[v].domain.values.empty()) partial[v] = ts.vars[v].domain.values.front();
  enumerate_init(ts, 0, partial, visit);
}

std::vector<State> initial_states(const TransitionSystem& ts) {
  std::vector<State> out;
  for_each_initial_state(ts, [&out](const State& s) { out.push_back(s); });
  return out;
}

std::optional<ModelFault> next_options(const TransitionSystem& ts, const State& s,
                                       std::vector<std::vector<Value>>& options) {
  std::optional<ModelFault> fault;
  options.resize(ts.vars.size());
  for (std::size_t v = 0; v < ts.vars.size(); ++v) {
    auto& opts = options[v];
    opts.clear();
    if (ts.vars[v].monitor) continue;
    const ExprRef& rule = ts.next_rules[v];
    if (!rule) {
      opts = ts.vars[v].domain.values;
      continue;
    }
    try {
      eval_choices(*rule, s, {}, opts);
    } catch (const EvalError& e) {
      if (!fault) fault = ModelFault{static_cast<int>(v), 0, ts.next_text[v], e.what()};
      opts.clear();
      continue;
    }
    for (Value x : opts) {
      if (!ts.vars[v].domain.contains(x) && !fault) {
        fault = ModelFault{static_cast<int>(v), x, ts.next_text[v],
                           "value " + std::to_string(x) + " outside domain of " + ts.vars[v].name};
      }
    }
    std::erase_if(opts, [&](Value x) { return !ts.vars[v].domain.contains(x); });
  }
  return fault;
}

Successors successors(const TransitionSystem& ts, const State& s) {
  Successors out;
  std::vector<std::vector<Value>> options;
  out.fault = next_options(ts, s, options);
  std::vector<std::size_t> ordinary;
  for (std::size_t v = 0; v < ts.vars.size(); ++v) {
    if (ts.vars[v].monitor) continue;
    if (options[v].empty()) return out;
    ordinary.push_back(v);
  }
  std::vector<std::size_t> digit(ordinary.size(), 0);
  State next(ts.vars.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < ordinary.size(); ++i) next[ordinary[i]] = options[ordinary[i]][digit[i]];
    update_monitors(ts, s, next);
    out.states.push_back(next);
    // Odometer with the last variable varying fastest.
    std::size_t i = ordinary.size();
    while (i > 0) {
      --i;
      if (++digit[i] < options[ordinary[i]].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (ordinary.empty()) return out;
  }
}

bool in_domain(const TransitionSystem& ts, const State& s) {
  if (s.size() != ts.vars.size()) return false;
  for (std::size_t v = 0; v < s.size(); ++v)
    if (!ts.vars[v].domain.contains(s[v])) return false;
  return true;
}

bool is_initial(const TransitionSystem& ts, const State& s) {
  if (!in_domain(ts, s)) return false;
  std::vector<Value> opts;
  for (int var : ts.init_order) {
    init_options(ts, var, s, opts);
    if (std::find(opts.begin(), opts.end(), s[static_cast<std::size_t>(var)]) == opts.end())
      return false;
  }
  State expected = s;
  init_monitors(ts, expected);
  return expected == s;
}

bool is_successor(const TransitionSystem& ts, const State& from, const State& to) {
  if (!in_domain(ts, from) || !in_domain(ts, to)) return false;
  std::vector<std::vector<Value>> options;
  next_options(ts, from, options);
  for (std::size_t v = 0; v < ts.vars.size(); ++v) {
    if (ts.vars[v].monitor) continue;
    const auto& o = options[v];
    if (std::find(o.begin(), o.end(), to[v]) == o.end()) return false;
  }
  State expected = to;
  update_monitors(ts, from, expected);
  return expected == to;
}

Value eval_expr(const ExprRef& e, const State& s) { return eval(*e, s, {}); }

}  // namespace vcsmc::sem
