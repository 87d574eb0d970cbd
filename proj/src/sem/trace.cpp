#include "vcsmc/sem/trace.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace vcsmc::sem {

Chooser first_choice() {
  return [](std::size_t, int, std::span<const Value>) { return std::size_t{0}; };
}

Chooser seeded_random(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](std::size_t, int, std::span<const Value> options) {
    return std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(*rng);
  };
}

Chooser scripted(std::function<std::optional<Value>(std::size_t, int)> script) {
  return [script = std::move(script)](std::size_t step, int var, std::span<const Value> options) {
    if (auto want = script(step, var)) {
      auto it = std::find(options.begin(), options.end(), *want);
      if (it == options.end())
        throw SimulationError(step, "scripted value " + std::to_string(*want) + " not available for variable #" +
                                        std::to_string(var));
      return static_cast<std::size_t>(it - options.begin());
    }
    return std::size_t{0};
  };
}

namespace {

Value choose(const Chooser& chooser, std::size_t step, int var, const std::vector<Value>& options) {
  std::size_t i = options.size() == 1 ? 0 : chooser(step, var, options);
  if (i >= options.size()) throw SimulationError(step, "chooser returned an invalid index");
  return options[i];
}

}  // namespace

Trace simulate(const TransitionSystem& ts, std::size_t steps, const Chooser& chooser) {
  Trace trace;
  State s(ts.vars.size(), 0);
  std::vector<Value> opts;
  for (int var : ts.init_order) {
    try {
      init_options(ts, var, s, opts);
    } catch (const EvalError& e) {
      throw SimulationError(0, e.what());
    }
    if (opts.empty())
      throw SimulationError(0, "no admissible initial value for " + ts.vars[static_cast<std::size_t>(var)].name);
    s[static_cast<std::size_t>(var)] = choose(chooser, 0, var, opts);
  }
  init_monitors(ts, s);
  trace.states.push_back(s);

  std::vector<std::vector<Value>> options;
  for (std::size_t step = 1; step <= steps; ++step) {
    const State& cur = trace.states.back();
    if (auto fault = next_options(ts, cur, options)) throw SimulationError(step, fault->message);
    State next(ts.vars.size(), 0);
    for (std::size_t v = 0; v < ts.vars.size(); ++v) {
      if (ts.vars[v].monitor) continue;
      if (options[v].empty()) throw SimulationError(step, "no successor value for " + ts.vars[v].name);
      next[v] = choose(chooser, step, static_cast<int>(v), options[v]);
    }
    update_monitors(ts, cur, next);
    trace.states.push_back(std::move(next));
  }
  return trace;
}

namespace {

std::vector<int> sorted_vars(const TransitionSystem& ts) {
  std::vector<int> order(ts.vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return ts.vars[static_cast<std::size_t>(a)].name < ts.vars[static_cast<std::size_t>(b)].name;
  });
  return order;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_complete(const TransitionSystem& ts, const std::vector<bool>& seen, std::size_t step) {
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) throw std::runtime_error("trace step " + std::to_string(step) + " lacks " + ts.vars[v].name);
}

}  // namespace

std::string trace_to_text(const TransitionSystem& ts, const Trace& trace) {
  std::ostringstream os;
  auto order = sorted_vars(ts);
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    os << "step " << i << '\n';
    for (int v : order)
      os << ts.vars[static_cast<std::size_t>(v)].name << " = "
         << ts.format_value(v, trace.states[i][static_cast<std::size_t>(v)]) << '\n';
  }
  return os.str();
}

Trace trace_from_text(const TransitionSystem& ts, const std::string& text) {
  Trace trace;
  std::vector<bool> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("step ", 0) == 0) {
      if (!trace.states.empty()) check_complete(ts, seen, trace.states.size() - 1);
      if (std::stoul(line.substr(5)) != trace.states.size())
        throw std::runtime_error("line " + std::to_string(lineno) + ": steps out of order");
      trace.states.emplace_back(ts.vars.size(), 0);
      seen.assign(ts.vars.size(), false);
      continue;
    }
    auto eq = line.find(" = ");
    if (eq == std::string::npos || trace.states.empty())
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected 'name = value'");
    std::string name = line.substr(0, eq);
    auto idx = ts.find(name);
    if (!idx) throw std::runtime_error("line " + std::to_string(lineno) + ": unknown variable " + name);
    auto value = ts.parse_value(*idx, trim(line.substr(eq + 3)));
    if (!value) throw std::runtime_error("line " + std::to_string(lineno) + ": bad value for " + name);
    trace.states.back()[static_cast<std::size_t>(*idx)] = *value;
    seen[static_cast<std::size_t>(*idx)] = true;
  }
  if (!trace.states.empty()) check_complete(ts, seen, trace.states.size() - 1);
  return trace;
}

std::string trace_to_json(const TransitionSystem& ts, const Trace& trace) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  auto order = sorted_vars(ts);
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (int v : order) {
      const auto& var = ts.vars[static_cast<std::size_t>(v)];
      Value x = trace.states[i][static_cast<std::size_t>(v)];
      switch (var.domain.kind) {
        case TypeKind::Bool: values[var.name] = x != 0; break;
        case TypeKind::Int: values[var.name] = x; break;
        case TypeKind::Enum: values[var.name] = ts.symbols->name(x); break;
      }
    }
    steps.push_back({{"index", i}, {"values", std::move(values)}});
  }
  nlohmann::ordered_json doc;
  doc["steps"] = std::move(steps);
  return doc.dump(2) + "\n";
}

Trace trace_from_json(const TransitionSystem& ts, const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  Trace trace;
  for (const auto& step : doc.at("steps")) {
    if (step.at("index").get<std::size_t>() != trace.states.size())
      throw std::runtime_error("trace steps out of order");
    State s(ts.vars.size(), 0);
    std::vector<bool> seen(ts.vars.size(), false);
    for (const auto& [name, val] : step.at("values").items()) {
      auto idx = ts.find(name);
      if (!idx) throw std::runtime_error("unknown variable " + name);
      std::optional<Value> v;
      if (val.is_boolean()) v = val.get<bool>() ? 1 : 0;
      else if (val.is_number_integer()) v = val.get<Value>();
      else if (val.is_string()) v = ts.parse_value(*idx, val.get<std::string>());
      if (!v || !ts.vars[static_cast<std::size_t>(*idx)].domain.contains(*v))
        throw std::runtime_error("bad value for " + name);
      s[static_cast<std::size_t>(*idx)] = *v;
      seen[static_cast<std::size_t>(*idx)] = true;
    }
    check_complete(ts, seen, trace.states.size());
    trace.states.push_back(std::move(s));
  }
  return trace;
}

}  // namespace vcsmc::sem
