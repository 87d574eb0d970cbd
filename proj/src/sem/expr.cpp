#include "vcsmc/sem/expr.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace vcsmc::sem {

Value SymbolTable::intern(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  Value id = static_cast<Value>(names_.size());
  names_.push_back(name);
  ids_.emplace(name, id);
  return id;
}

std::optional<Value> SymbolTable::find(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Type Type::enumeration(std::vector<Value> symbols) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  return {TypeKind::Enum, std::move(symbols)};
}

std::string describe(const Type& t, const SymbolTable& symbols) {
  switch (t.kind) {
    case TypeKind::Bool: return "boolean";
    case TypeKind::Int: return "integer";
    case TypeKind::Enum: {
      std::string s = "{";
      for (std::size_t i = 0; i < t.symbols.size(); ++i) {
        if (i) s += ", ";
        s += symbols.name(t.symbols[i]);
      }
      return s + "}";
    }
  }
  return "?";
}

namespace {

const char* kind_name(TypeKind k) {
  switch (k) {
    case TypeKind::Bool: return "boolean";
    case TypeKind::Int: return "integer";
    case TypeKind::Enum: return "enumeration";
  }
  return "?";
}

void require(const ExprRef& e, TypeKind k, const char* what) {
  if (e->type.kind != k)
    throw TypeError(std::string("operand of ") + what + " must be " + kind_name(k) + ", got " +
                    kind_name(e->type.kind));
}

Type join(const Type& a, const Type& b, const char* what) {
  if (a.kind != b.kind)
    throw TypeError(std::string("incompatible types in ") + what + ": " + kind_name(a.kind) +
                    " and " + kind_name(b.kind));
  if (a.kind != TypeKind::Enum) return a;
  std::vector<Value> all = a.symbols;
  all.insert(all.end(), b.symbols.begin(), b.symbols.end());
  return Type::enumeration(std::move(all));
}

Value checked(std::int64_t v) {
  if (v < std::numeric_limits<Value>::min() || v > std::numeric_limits<Value>::max())
    throw EvalError("integer overflow");
  return static_cast<Value>(v);
}

std::shared_ptr<Node> node(Op op, Type t) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->type = std::move(t);
  return n;
}

bool all_const(const std::vector<ExprRef>& kids) {
  return std::all_of(kids.begin(), kids.end(), [](const ExprRef& k) { return k->op == Op::Const; });
}

ExprRef fold(std::shared_ptr<Node> n) {
  if (n->op != Op::Set && n->op != Op::Var && n->op != Op::NextVar && all_const(n->kids) &&
      !n->kids.empty()) {
    return constant(eval(*n, {}, {}), n->type);
  }
  return n;
}

}  // namespace

ExprRef constant(Value v, Type t) {
  auto n = node(Op::Const, std::move(t));
  n->value = v;
  return n;
}

ExprRef bool_constant(bool b) { return constant(b ? 1 : 0, Type::boolean()); }

ExprRef var_ref(int index, Type t) {
  auto n = node(Op::Var, std::move(t));
  n->var = index;
  return n;
}

ExprRef next_var_ref(int index, Type t) {
  auto n = node(Op::NextVar, std::move(t));
  n->var = index;
  return n;
}

ExprRef make_not(ExprRef a) {
  require(a, TypeKind::Bool, "'!'");
  auto n = node(Op::Not, Type::boolean());
  n->kids = {std::move(a)};
  return fold(n);
}

ExprRef make_neg(ExprRef a) {
  require(a, TypeKind::Int, "unary '-'");
  auto n = node(Op::Neg, Type::integer());
  n->kids = {std::move(a)};
  return fold(n);
}

ExprRef make_binary(Op op, ExprRef a, ExprRef b) {
  Type result = Type::boolean();
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      require(a, TypeKind::Bool, "boolean connective");
      require(b, TypeKind::Bool, "boolean connective");
      break;
    case Op::Eq:
    case Op::Ne: {
      join(a->type, b->type, "comparison");
      if (a->type.kind == TypeKind::Enum) {
        std::vector<Value> common;
        std::set_intersection(a->type.symbols.begin(), a->type.symbols.end(),
                              b->type.symbols.begin(), b->type.symbols.end(),
                              std::back_inserter(common));
        if (common.empty()) throw TypeError("comparison between disjoint enumeration values");
      }
      break;
    }
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      require(a, TypeKind::Int, "ordering comparison");
      require(b, TypeKind::Int, "ordering comparison");
      break;
    case Op::Add:
    case Op::Sub:
      require(a, TypeKind::Int, "arithmetic");
      require(b, TypeKind::Int, "arithmetic");
      result = Type::integer();
      break;
    default: throw TypeError("not a binary operator");
  }
  auto n = node(op, std::move(result));
  n->kids = {std::move(a), std::move(b)};
  return fold(n);
}

ExprRef make_case(std::vector<std::pair<ExprRef, ExprRef>> arms) {
  if (arms.empty()) throw TypeError("case without arms");
  std::optional<Type> t;
  for (const auto& [guard, value] : arms) {
    require(guard, TypeKind::Bool, "case guard");
    t = t ? join(*t, value->type, "case arms") : value->type;
  }
  auto n = node(Op::Case, *t);
  for (auto& [guard, value] : arms) {
    if (guard->op == Op::Const && guard->value == 0) continue;
    bool always = guard->op == Op::Const;
    n->kids.push_back(std::move(guard));
    n->kids.push_back(std::move(value));
    if (always) break;
  }
  if (n->kids.empty()) throw TypeError("case expression with no reachable arm");
  if (n->kids[0]->op == Op::Const) {
    // First reachable guard is constant true; keep the declared type.
    ExprRef v = n->kids[1];
    if (v->type == n->type) return v;
  }
  return n;
}

ExprRef make_set(std::vector<ExprRef> elements) {
  if (elements.empty()) throw TypeError("empty set literal");
  Type t = elements[0]->type;
  for (std::size_t i = 1; i < elements.size(); ++i) t = join(t, elements[i]->type, "set literal");
  for (const auto& e : elements)
    if (contains_set(*e)) throw TypeError("nested set literal");
  auto n = node(Op::Set, std::move(t));
  n->kids = std::move(elements);
  return n;
}

ExprRef shift_to_next(const ExprRef& e) {
  if (e->op == Op::Var) return next_var_ref(e->var, e->type);
  if (e->kids.empty()) return e;
  auto n = std::make_shared<Node>(*e);
  for (auto& k : n->kids) k = shift_to_next(k);
  return n;
}

bool contains_set(const Node& e) {
  if (e.op == Op::Set) return true;
  return std::any_of(e.kids.begin(), e.kids.end(), [](const ExprRef& k) { return contains_set(*k); });
}

bool is_true_literal(const ExprRef& e) {
  return e && e->op == Op::Const && e->type.kind == TypeKind::Bool && e->value == 1;
}

Value eval(const Node& e, std::span<const Value> cur, std::span<const Value> next) {
  switch (e.op) {
    case Op::Const: return e.value;
    case Op::Var:
      if (static_cast<std::size_t>(e.var) >= cur.size()) throw EvalError("variable read out of range");
      return cur[static_cast<std::size_t>(e.var)];
    case Op::NextVar:
      if (static_cast<std::size_t>(e.var) >= next.size())
        throw EvalError("next-state read outside a monitor update");
      return next[static_cast<std::size_t>(e.var)];
    case Op::Not: return eval(*e.kids[0], cur, next) ? 0 : 1;
    case Op::Neg: return checked(-static_cast<std::int64_t>(eval(*e.kids[0], cur, next)));
    case Op::And: return eval(*e.kids[0], cur, next) && eval(*e.kids[1], cur, next);
    case Op::Or: return eval(*e.kids[0], cur, next) || eval(*e.kids[1], cur, next);
    case Op::Implies: return !eval(*e.kids[0], cur, next) || eval(*e.kids[1], cur, next);
    case Op::Iff: return (eval(*e.kids[0], cur, next) != 0) == (eval(*e.kids[1], cur, next) != 0);
    case Op::Eq: return eval(*e.kids[0], cur, next) == eval(*e.kids[1], cur, next);
    case Op::Ne: return eval(*e.kids[0], cur, next) != eval(*e.kids[1], cur, next);
    case Op::Lt: return eval(*e.kids[0], cur, next) < eval(*e.kids[1], cur, next);
    case Op::Le: return eval(*e.kids[0], cur, next) <= eval(*e.kids[1], cur, next);
    case Op::Gt: return eval(*e.kids[0], cur, next) > eval(*e.kids[1], cur, next);
    case Op::Ge: return eval(*e.kids[0], cur, next) >= eval(*e.kids[1], cur, next);
    case Op::Add:
      return checked(static_cast<std::int64_t>(eval(*e.kids[0], cur, next)) +
                     eval(*e.kids[1], cur, next));
    case Op::Sub:
      return checked(static_cast<std::int64_t>(eval(*e.kids[0], cur, next)) -
                     eval(*e.kids[1], cur, next));
    case Op::Case:
      for (std::size_t i = 0; i + 1 < e.kids.size(); i += 2)
        if (eval(*e.kids[i], cur, next)) return eval(*e.kids[i + 1], cur, next);
      throw EvalError("no case arm applies");
    case Op::Set: throw EvalError("set literal in deterministic position");
  }
  throw EvalError("unknown operator");
}

void eval_choices(const Node& e, std::span<const Value> cur, std::span<const Value> next,
                  std::vector<Value>& out) {
  auto push = [&out](Value v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (e.op == Op::Set) {
    for (const auto& k : e.kids) push(eval(*k, cur, next));
    return;
  }
  if (e.op == Op::Case) {
    for (std::size_t i = 0; i + 1 < e.kids.size(); i += 2) {
      if (eval(*e.kids[i], cur, next)) {
        eval_choices(*e.kids[i + 1], cur, next, out);
        return;
      }
    }
    throw EvalError("no case arm applies");
  }
  push(eval(e, cur, next));
}

bool equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.kids.size() != b.kids.size()) return false;
  if (a.op == Op::Const) return a.value == b.value && a.type.kind == b.type.kind;
  if (a.op == Op::Var || a.op == Op::NextVar) return a.var == b.var;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

std::size_t hash(const Node& e) {
  std::size_t h = std::hash<int>{}(static_cast<int>(e.op)) * 0x9E3779B97F4A7C15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
  if (e.op == Op::Const) mix(static_cast<std::size_t>(e.value));
  if (e.op == Op::Var || e.op == Op::NextVar) mix(static_cast<std::size_t>(e.var));
  for (const auto& k : e.kids) mix(hash(*k));
  return h;
}

void collect_vars(const Node& e, std::vector<int>& out) {
  if (e.op == Op::Var || e.op == Op::NextVar) {
    if (std::find(out.begin(), out.end(), e.var) == out.end()) out.push_back(e.var);
    return;
  }
  for (const auto& k : e.kids) collect_vars(*k, out);
}

}  // namespace vcsmc::sem
