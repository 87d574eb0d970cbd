#include "vcsmc/ltl/transform.hpp"

#include <cctype>
#include <map>

namespace vcsmc::ltl {

sem::ExprRef to_state_expr(const Formula& f) {
  switch (f.op) {
    case LtlOp::Atom: return f.atom;
    case LtlOp::True: return sem::bool_constant(true);
    case LtlOp::False: return sem::bool_constant(false);
    case LtlOp::Not: return sem::make_not(to_state_expr(*f.kids[0]));
    case LtlOp::And: return sem::make_binary(sem::Op::And, to_state_expr(*f.kids[0]), to_state_expr(*f.kids[1]));
    case LtlOp::Or: return sem::make_binary(sem::Op::Or, to_state_expr(*f.kids[0]), to_state_expr(*f.kids[1]));
    case LtlOp::Implies:
      return sem::make_binary(sem::Op::Implies, to_state_expr(*f.kids[0]), to_state_expr(*f.kids[1]));
    default: throw UnsupportedFormula("temporal operator in state formula: " + to_string(f));
  }
}

namespace {

bool plain_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return true;
}

class PastEliminator {
 public:
  explicit PastEliminator(const sem::TransitionSystem& ts) { out_.ts = ts; }

  PastElimination run(const FormulaRef& f) {
    out_.formula = rewrite(f);
    return std::move(out_);
  }

 private:
  FormulaRef rewrite(const FormulaRef& f) {
    if (is_past(f->op)) return latch(f);
    if (f->kids.empty()) return f;
    std::vector<FormulaRef> kids;
    bool changed = false;
    for (const auto& k : f->kids) {
      kids.push_back(rewrite(k));
      changed |= kids.back() != k;
    }
    if (!changed) return f;
    auto copy = std::make_shared<Formula>(*f);
    copy->kids = std::move(kids);
    return copy;
  }

  FormulaRef latch(const FormulaRef& f) {
    std::string key = to_string(*f);
    if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;

    FormulaRef arg = rewrite(f->kids[0]);
    if (contains_future(*arg))
      throw UnsupportedFormula("past operator over a future operator: " + to_string(*f));
    sem::ExprRef now = to_state_expr(*arg);
    const int idx = static_cast<int>(out_.ts.vars.size());
    sem::ExprRef self = sem::var_ref(idx, sem::Type::boolean());
    sem::ExprRef init, next;
    switch (f->op) {
      case LtlOp::O:
        init = now;
        next = sem::make_binary(sem::Op::Or, self, sem::shift_to_next(now));
        break;
      case LtlOp::H:
        init = now;
        next = sem::make_binary(sem::Op::And, self, sem::shift_to_next(now));
        break;
      default:
        init = sem::bool_constant(false);
        next = now;
    }
    std::string name = latch_name(*f, *f->kids[0]);
    out_.ts.add_monitor(name, init, next);
    out_.latches.push_back(idx);
    out_.sources.push_back(key);
    FormulaRef atom = make_atom(sem::var_ref(idx, sem::Type::boolean()), name);
    by_key_.emplace(key, atom);
    return atom;
  }

  std::string latch_name(const Formula& f, const Formula& arg) {
    std::string base;
    if (arg.op == LtlOp::Atom && plain_identifier(arg.text)) {
      base = std::string(f.op == LtlOp::O ? "O_" : f.op == LtlOp::H ? "H_" : "Y_") + arg.text;
      for (char& c : base)
        if (c == '.') c = '_';
    } else {
      base = "past_" + std::to_string(++anonymous_);
    }
    std::string name = base;
    for (int k = 2; out_.ts.find(name); ++k) name = base + "_" + std::to_string(k);
    return name;
  }

  PastElimination out_;
  std::map<std::string, FormulaRef> by_key_;
  int anonymous_ = 0;
};

bool liveness(const Formula& f, bool positive) {
  switch (f.op) {
    case LtlOp::F:
    case LtlOp::U:
      if (positive) return true;
      break;
    case LtlOp::G:
    case LtlOp::R:
      if (!positive) return true;
      break;
    case LtlOp::Not: return liveness(*f.kids[0], !positive);
    case LtlOp::Implies: return liveness(*f.kids[0], !positive) || liveness(*f.kids[1], positive);
    default: break;
  }
  for (const auto& k : f.kids)
    if (liveness(*k, positive)) return true;
  return false;
}

}  // namespace

PastElimination eliminate_past(const FormulaRef& f, const sem::TransitionSystem& ts) {
  return PastEliminator(ts).run(f);
}

FormulaRef expand_bounded(const FormulaRef& f) {
  if (f->kids.empty()) return f;
  std::vector<FormulaRef> kids;
  for (const auto& k : f->kids) kids.push_back(expand_bounded(k));
  if (f->op == LtlOp::BoundedF || f->op == LtlOp::BoundedG) {
    const LtlOp join = f->op == LtlOp::BoundedF ? LtlOp::Or : LtlOp::And;
    FormulaRef chain = kids[0];
    for (int i = f->lo; i < f->hi; ++i) chain = make_binary(join, kids[0], make_unary(LtlOp::X, chain));
    for (int i = 0; i < f->lo; ++i) chain = make_unary(LtlOp::X, chain);
    return chain;
  }
  auto copy = std::make_shared<Formula>(*f);
  copy->kids = std::move(kids);
  return copy;
}

bool has_unbounded_liveness(const Formula& f) { return liveness(f, true); }

}  // namespace vcsmc::ltl
