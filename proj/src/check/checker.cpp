#include "vcsmc/check/checker.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "vcsmc/ltl/transform.hpp"

namespace vcsmc::check {

using ltl::LtlOp;
using sem::State;
using Clock = std::chrono::steady_clock;

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::NoCounterexample: return "NoCounterexampleWithinBound";
    case VerdictKind::Counterexample: return "Counterexample";
    case VerdictKind::ModelError: return "ModelError";
    case VerdictKind::Timeout: return "Timeout";
  }
  return "?";
}

namespace {

std::size_t hash_state(const State& s) {
  std::size_t h = 0xcbf29ce484222325ull;
  for (sem::Value v : s) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 0x100000001b3ull;
  }
  return h;
}

struct StateHash {
  std::size_t operator()(const State& s) const { return hash_state(s); }
};

// Hash-consed obligations in negation normal form. Simplifications are the
// ones valid in three-valued logic: units, zeros, idempotence, commutativity.
class Obligations {
 public:
  enum class P : std::uint8_t { True, False, Atom, NegAtom, And, Or, X, U, R, F, G, BF, BG };
  static constexpr int kTrue = 0;
  static constexpr int kFalse = 1;

  Obligations() {
    intern({P::True});
    intern({P::False});
  }

  int from_formula(const ltl::Formula& f, bool neg) {
    switch (f.op) {
      case LtlOp::Atom: {
        auto it = std::find(atoms_.begin(), atoms_.end(), f.atom);
        int a = static_cast<int>(it - atoms_.begin());
        if (it == atoms_.end()) atoms_.push_back(f.atom);
        return intern({neg ? P::NegAtom : P::Atom, -1, -1, a});
      }
      case LtlOp::True: return neg ? kFalse : kTrue;
      case LtlOp::False: return neg ? kTrue : kFalse;
      case LtlOp::Not: return from_formula(*f.kids[0], !neg);
      case LtlOp::And:
      case LtlOp::Or: {
        int a = from_formula(*f.kids[0], neg), b = from_formula(*f.kids[1], neg);
        return (f.op == LtlOp::And) != neg ? conj(a, b) : disj(a, b);
      }
      case LtlOp::Implies: {
        int a = from_formula(*f.kids[0], !neg), b = from_formula(*f.kids[1], neg);
        return neg ? conj(a, b) : disj(a, b);
      }
      case LtlOp::X: return intern({P::X, from_formula(*f.kids[0], neg)});
      case LtlOp::U:
      case LtlOp::R: {
        int a = from_formula(*f.kids[0], neg), b = from_formula(*f.kids[1], neg);
        return intern({(f.op == LtlOp::U) != neg ? P::U : P::R, a, b});
      }
      case LtlOp::F:
      case LtlOp::G: return intern({(f.op == LtlOp::F) != neg ? P::F : P::G, from_formula(*f.kids[0], neg)});
      case LtlOp::BoundedF:
      case LtlOp::BoundedG:
        return intern({(f.op == LtlOp::BoundedF) != neg ? P::BF : P::BG, from_formula(*f.kids[0], neg), -1, -1,
                       f.lo, f.hi});
      default: throw ltl::UnsupportedFormula("past operator left after elimination");
    }
  }

  const std::vector<sem::ExprRef>& atoms() const { return atoms_; }

  // Value of obligation `id` at the last position of a prefix, that state's
  // atoms being `val`: anything that needs a later position is unknown.
  ltl::Kleene at_end(int id, const std::vector<bool>& val) const {
    using K = ltl::Kleene;
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
      case P::True: return K::True;
      case P::False: return K::False;
      case P::Atom: return val[static_cast<std::size_t>(n.atom)] ? K::True : K::False;
      case P::NegAtom: return val[static_cast<std::size_t>(n.atom)] ? K::False : K::True;
      case P::And: return ltl::k_and(at_end(n.a, val), at_end(n.b, val));
      case P::Or: return ltl::k_or(at_end(n.a, val), at_end(n.b, val));
      case P::X: return K::Unknown;
      case P::U: return ltl::k_or(at_end(n.b, val), ltl::k_and(at_end(n.a, val), K::Unknown));
      case P::R: return ltl::k_and(at_end(n.b, val), ltl::k_or(at_end(n.a, val), K::Unknown));
      case P::F: return ltl::k_or(at_end(n.a, val), K::Unknown);
      case P::G: return ltl::k_and(at_end(n.a, val), K::Unknown);
      case P::BF:
      case P::BG: {
        if (n.lo > 0) return K::Unknown;
        K now = at_end(n.a, val);
        if (n.op == P::BF) return ltl::k_or(now, n.hi > 0 ? K::Unknown : K::False);
        return ltl::k_and(now, n.hi > 0 ? K::Unknown : K::True);
      }
    }
    return K::Unknown;
  }

  // Residual obligation for the next position after reading a state whose
  // atom values are `val`.
  int progress(int id, const std::vector<bool>& val, std::uint64_t mask, bool memo) {
    if (id <= kFalse) return id;
    std::uint64_t key = (static_cast<std::uint64_t>(id) << 32) ^ mask;
    if (memo) {
      auto& m = memo_[key];
      if (m.first == id + 1 && m.second.first == mask) return m.second.second;
    }
    const Node n = nodes_[static_cast<std::size_t>(id)];
    int r = kTrue;
    switch (n.op) {
      case P::True: r = kTrue; break;
      case P::False: r = kFalse; break;
      case P::Atom: r = val[static_cast<std::size_t>(n.atom)] ? kTrue : kFalse; break;
      case P::NegAtom: r = val[static_cast<std::size_t>(n.atom)] ? kFalse : kTrue; break;
      case P::And: r = conj(progress(n.a, val, mask, memo), progress(n.b, val, mask, memo)); break;
      case P::Or: r = disj(progress(n.a, val, mask, memo), progress(n.b, val, mask, memo)); break;
      case P::X: r = n.a; break;
      case P::U: r = disj(progress(n.b, val, mask, memo), conj(progress(n.a, val, mask, memo), id)); break;
      case P::R: r = conj(progress(n.b, val, mask, memo), disj(progress(n.a, val, mask, memo), id)); break;
      case P::F: r = disj(progress(n.a, val, mask, memo), id); break;
      case P::G: r = conj(progress(n.a, val, mask, memo), id); break;
      case P::BF:
      case P::BG: {
        if (n.lo > 0) {
          r = intern({n.op, n.a, -1, -1, n.lo - 1, n.hi - 1});
          break;
        }
        const bool f = n.op == P::BF;
        int now = progress(n.a, val, mask, memo);
        int rest = n.hi > 0 ? intern({n.op, n.a, -1, -1, 0, n.hi - 1}) : (f ? kFalse : kTrue);
        r = f ? disj(now, rest) : conj(now, rest);
        break;
      }
    }
    if (memo) memo_[key] = {id + 1, {mask, r}};
    return r;
  }

 private:
  struct Node {
    P op = P::True;
    int a = -1;
    int b = -1;
    int atom = -1;
    int lo = 0;
    int hi = 0;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const {
      std::size_t h = static_cast<std::size_t>(n.op);
      for (int x : {n.a, n.b, n.atom, n.lo, n.hi}) h = h * 1000003u ^ static_cast<std::size_t>(x + 7);
      return h;
    }
  };

  int intern(Node n) {
    auto [it, inserted] = ids_.emplace(n, static_cast<int>(nodes_.size()));
    if (inserted) nodes_.push_back(n);
    return it->second;
  }

  int conj(int a, int b) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue || a == b) return a;
    if (a > b) std::swap(a, b);
    return intern({P::And, a, b});
  }

  int disj(int a, int b) {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse) return b;
    if (b == kFalse || a == b) return a;
    if (a > b) std::swap(a, b);
    return intern({P::Or, a, b});
  }

  std::vector<Node> nodes_;
  std::unordered_map<Node, int, NodeHash> ids_;
  std::vector<sem::ExprRef> atoms_;
  // key -> (id + 1, (mask, result)); the stored id and mask guard against key collisions
  std::unordered_map<std::uint64_t, std::pair<int, std::pair<std::uint64_t, int>>> memo_;
};

struct Outcome {
  int dv = INT_MAX;  // shortest violation depth
  int dp = INT_MAX;  // shortest poisoned-successor depth
  std::string fault;
};

Verdict finish(const CheckTask& task, const Outcome& o, Clock::time_point start) {
  Verdict v;
  v.bound = task.bound;
  v.formula = ltl::to_string(*task.formula);
  if (o.dv < o.dp) {
    v.kind = VerdictKind::Counterexample;
    v.violation_step = o.dv;
  } else if (o.dp != INT_MAX) {
    v.kind = VerdictKind::ModelError;
    v.error_step = o.dp;
    v.error = o.fault;
  }
  v.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return v;
}

class Budget {
 public:
  explicit Budget(const CheckTask& task) : task_(task), start_(Clock::now()) {}
  Clock::time_point start() const { return start_; }
  bool exhausted() {
    if (++ticks_ % 256 != 0) return false;
    if (task_.cancel && task_.cancel->load(std::memory_order_relaxed)) return true;
    return task_.timeout && Clock::now() - start_ > *task_.timeout;
  }

 private:
  const CheckTask& task_;
  Clock::time_point start_;
  std::size_t ticks_ = 0;
};

Verdict timed_out(const CheckTask& task, Clock::time_point start) {
  Verdict v;
  v.kind = VerdictKind::Timeout;
  v.bound = task.bound;
  v.formula = ltl::to_string(*task.formula);
  v.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return v;
}

}  // namespace

Verdict check_bounded(const CheckTask& task) {
  if (!task.ts || !task.formula) throw std::invalid_argument("incomplete check task");
  if (task.bound < 0) throw std::invalid_argument("bound must be non-negative");
  Budget budget(task);
  const std::size_t visible = task.ts->vars.size();

  ltl::PastElimination pe = ltl::eliminate_past(task.formula, *task.ts);
  const sem::TransitionSystem& ts = pe.ts;
  Obligations store;
  const int root = store.from_formula(*pe.formula, false);
  const auto& atoms = store.atoms();
  const bool memo = atoms.size() <= 64;

  std::vector<bool> val(atoms.size());
  std::uint64_t mask = 0;
  auto valuate = [&](const State& s) {
    mask = 0;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      val[a] = sem::eval(*atoms[a], s) != 0;
      if (val[a] && a < 64) mask |= 1ull << a;
    }
  };

  // `pending` is the obligation at this node's position, before reading its state.
  struct Node {
    State state;
    int pending;
    int parent;
  };
  std::vector<std::vector<Node>> layers(1);

  struct Key {
    const std::vector<Node>* layer;
    std::size_t operator()(int i) const {
      const Node& n = (*layer)[static_cast<std::size_t>(i)];
      return hash_state(n.state) * 31u + static_cast<std::size_t>(n.pending);
    }
    bool operator()(int a, int b) const {
      const Node& x = (*layer)[static_cast<std::size_t>(a)];
      const Node& y = (*layer)[static_cast<std::size_t>(b)];
      return x.pending == y.pending && x.state == y.state;
    }
  };
  auto add = [](std::vector<Node>& layer, std::unordered_set<int, Key, Key>& seen, Node n) {
    layer.push_back(std::move(n));
    if (!seen.insert(static_cast<int>(layer.size() - 1)).second) layer.pop_back();
  };

  Outcome out;
  std::size_t nodes = 0;
  bool all_true = true;
  {
    std::unordered_set<int, Key, Key> seen(64, Key{&layers[0]}, Key{&layers[0]});
    std::optional<Verdict> stop;
    sem::for_each_initial_state(ts, [&](const State& s) {
      if (stop) return;
      if (budget.exhausted()) stop = timed_out(task, budget.start());
      add(layers[0], seen, Node{s, root, -1});
    });
    if (stop) return *stop;
  }

  for (int depth = 0;; ++depth) {
    auto& layer = layers[static_cast<std::size_t>(depth)];
    nodes += layer.size();
    const bool final_layer = depth == task.bound;
    std::vector<int> progressed(layer.size());
    for (std::size_t i = 0; i < layer.size(); ++i) {
      valuate(layer[i].state);
      ltl::Kleene now = store.at_end(layer[i].pending, val);
      if (now != ltl::Kleene::False) {
        if (final_layer) all_true &= now == ltl::Kleene::True;
        else progressed[i] = store.progress(layer[i].pending, val, mask, memo);
        continue;
      }
      out.dv = depth;
      Verdict v = finish(task, out, budget.start());
      std::vector<State> rev;
      for (int k = static_cast<int>(i), d = depth; k >= 0; k = layers[static_cast<std::size_t>(d--)][static_cast<std::size_t>(k)].parent) {
        const State& s = layers[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)].state;
        rev.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(visible));
      }
      v.trace.states.assign(rev.rbegin(), rev.rend());
      v.nodes = nodes;
      return v;
    }
    if (final_layer || layer.empty()) break;

    layers.emplace_back();
    auto& next = layers.back();
    auto& cur = layers[static_cast<std::size_t>(depth)];
    std::unordered_set<int, Key, Key> seen(cur.size() * 2 + 16, Key{&next}, Key{&next});
    std::unordered_map<State, sem::Successors, StateHash> cache;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (budget.exhausted()) return timed_out(task, budget.start());
      auto it = cache.find(cur[i].state);
      if (it == cache.end()) it = cache.emplace(cur[i].state, sem::successors(ts, cur[i].state)).first;
      const sem::Successors& succ = it->second;
      if (succ.fault && out.dp == INT_MAX) {
        out.dp = depth + 1;
        const auto& f = *succ.fault;
        out.fault = f.message + " (rule: " + f.rule + ")";
      }
      if (succ.states.empty()) {
        valuate(cur[i].state);
        all_true &= store.at_end(cur[i].pending, val) == ltl::Kleene::True;
      }
      for (const State& s : succ.states) add(next, seen, Node{s, progressed[i], static_cast<int>(i)});
    }
    if (out.dp != INT_MAX) {
      Verdict v = finish(task, out, budget.start());
      v.nodes = nodes;
      return v;
    }
  }

  Verdict v = finish(task, out, budget.start());
  v.holds_on_all_paths = all_true;
  v.nodes = nodes;
  return v;
}

Verdict brute_force_check(const CheckTask& task, const OracleCaps& caps) {
  if (!task.ts || !task.formula) throw std::invalid_argument("incomplete check task");
  const sem::TransitionSystem& ts = *task.ts;
  const ltl::Formula& f = *task.formula;
  Budget budget(task);
  Outcome out;
  std::vector<State> path, witness;
  std::size_t paths = 0;
  bool all_hold = true;
  bool timed = false;

  auto leaf = [&] {
    if (++paths > caps.max_paths) throw CapExceeded("more than " + std::to_string(caps.max_paths) + " paths");
    auto v = ltl::holds_on_prefix(f, path);
    if (v != ltl::PrefixVerdict::Holds) all_hold = false;
    if (v != ltl::PrefixVerdict::Violated) return;
    for (std::size_t m = 1; m <= path.size(); ++m) {
      if (ltl::holds_on_prefix(f, std::span<const State>(path.data(), m)) != ltl::PrefixVerdict::Violated) continue;
      int d = static_cast<int>(m) - 1;
      if (d < out.dv) {
        out.dv = d;
        witness.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(m));
      }
      break;
    }
  };

  std::function<void()> dfs = [&] {
    if (timed || (timed = budget.exhausted())) return;
    const int depth = static_cast<int>(path.size()) - 1;
    if (depth == task.bound) return leaf();
    sem::Successors succ = sem::successors(ts, path.back());
    if (succ.fault && depth + 1 < out.dp) {
      out.dp = depth + 1;
      out.fault = succ.fault->message + " (rule: " + succ.fault->rule + ")";
    }
    if (succ.states.empty()) return leaf();
    for (auto& s : succ.states) {
      path.push_back(std::move(s));
      dfs();
      path.pop_back();
    }
  };

  for (const State& s0 : sem::initial_states(ts)) {
    path.assign(1, s0);
    dfs();
  }
  if (timed) return timed_out(task, budget.start());
  Verdict v = finish(task, out, budget.start());
  if (v.kind == VerdictKind::Counterexample) v.trace.states = witness;
  v.holds_on_all_paths = v.kind == VerdictKind::NoCounterexample && all_hold && paths > 0;
  v.nodes = paths;
  return v;
}

ltl::PrefixVerdict replay_counterexample(const sem::TransitionSystem& ts, const sem::Trace& trace,
                                         const ltl::Formula& formula) {
  if (trace.states.empty()) throw InvalidTrace("empty trace");
  if (!sem::is_initial(ts, trace.states[0])) throw InvalidTrace("step 0 is not an initial state");
  for (std::size_t i = 1; i < trace.states.size(); ++i)
    if (!sem::is_successor(ts, trace.states[i - 1], trace.states[i]))
      throw InvalidTrace("step " + std::to_string(i) + " is not a successor of step " + std::to_string(i - 1));
  return ltl::holds_on_prefix(formula, trace);
}

}  // namespace vcsmc::check
