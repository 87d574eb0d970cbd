#include "vcsmc/sem/elaborate.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "vcsmc/model/parser.hpp"
#include "vcsmc/model/printer.hpp"

namespace vcsmc::sem {

using model::ElaborationError;
using model::ExprKind;
using model::SourceSpan;

namespace {

Op binary_op(model::BinaryOp op) {
  switch (op) {
    case model::BinaryOp::Implies: return Op::Implies;
    case model::BinaryOp::Iff: return Op::Iff;
    case model::BinaryOp::Or: return Op::Or;
    case model::BinaryOp::And: return Op::And;
    case model::BinaryOp::Eq: return Op::Eq;
    case model::BinaryOp::Ne: return Op::Ne;
    case model::BinaryOp::Lt: return Op::Lt;
    case model::BinaryOp::Le: return Op::Le;
    case model::BinaryOp::Gt: return Op::Gt;
    case model::BinaryOp::Ge: return Op::Ge;
    case model::BinaryOp::Add: return Op::Add;
    case model::BinaryOp::Sub: return Op::Sub;
  }
  return Op::And;
}

using NameResolver = std::function<ExprRef(const model::Expr&)>;

ExprRef build(const model::Expr& e, const NameResolver& names) {
  try {
    switch (e.kind) {
      case ExprKind::Name: return names(e);
      case ExprKind::BoolLit: return bool_constant(e.bool_value);
      case ExprKind::IntLit: return constant(static_cast<Value>(e.int_value), Type::integer());
      case ExprKind::Unary: {
        ExprRef a = build(*e.operands[0], names);
        return e.unary_op == model::UnaryOp::Not ? make_not(a) : make_neg(a);
      }
      case ExprKind::Binary: {
        ExprRef a = build(*e.operands[0], names);
        ExprRef b = build(*e.operands[1], names);
        return make_binary(binary_op(e.binary_op), a, b);
      }
      case ExprKind::Case: {
        std::vector<std::pair<ExprRef, ExprRef>> arms;
        for (const auto& arm : e.arms) arms.emplace_back(build(*arm.guard, names), build(*arm.value, names));
        return make_case(std::move(arms));
      }
      case ExprKind::Set: {
        std::vector<ExprRef> elems;
        for (const auto& el : e.operands) elems.push_back(build(*el, names));
        return make_set(std::move(elems));
      }
    }
  } catch (const TypeError& err) {
    throw ElaborationError(e.span, err.what());
  } catch (const EvalError& err) {
    throw ElaborationError(e.span, err.what());
  }
  throw ElaborationError(e.span, "unsupported expression");
}

struct Scope;

struct Resolved {
  ExprRef expr;
  Scope* instance = nullptr;
};

struct Scope {
  const model::ModuleDecl* module = nullptr;
  std::string prefix;
  Scope* caller = nullptr;
  const model::InstanceDecl* decl = nullptr;
  std::vector<std::unique_ptr<Scope>> children;
  std::map<std::string, Scope*> child_by_name;
  std::map<std::string, int> var_index;
  std::map<std::string, const model::DefineDecl*> defines;
  std::map<std::string, std::size_t> param_pos;
  std::map<std::string, Resolved> memo;
  std::set<std::string> in_progress;
};

class Elaborator {
 public:
  Elaborator(const model::ModelAst& ast, std::vector<model::Diagnostic>* sink)
      : ast_(ast), sink_(sink) {}

  TransitionSystem run() {
    const model::ModuleDecl* main = ast_.main();
    if (!main) throw ElaborationError({}, "model must contain exactly one module named 'main'");
    if (!main->params.empty())
      throw ElaborationError(main->span, "module 'main' must not have parameters");
    for (const auto& m : ast_.modules)
      for (const auto& v : m.vars)
        if (v.type.kind == model::VarTypeKind::Enum)
          for (const auto& s : v.type.symbols) enum_symbols_.insert(s);
    for (const auto& s : enum_symbols_) ts_.symbols->intern(s);

    root_ = std::make_unique<Scope>();
    root_->module = main;
    std::vector<std::string> stack;
    build_tree(*root_, stack);
    declare_vars(*root_);
    compute_domains(*root_);
    elaborate_defines(*root_);
    elaborate_rules(*root_);
    order_init();
    return std::move(ts_);
  }

 private:
  void report(const ElaborationError& e) {
    if (!sink_) throw e;
    for (const auto& d : *sink_)
      if (d.span.line == e.span().line && d.span.column == e.span().column && d.message == e.message())
        return;
    sink_->push_back({model::Severity::Error, e.span(), e.message()});
  }

  void build_tree(Scope& scope, std::vector<std::string>& stack) {
    const auto& mod = *scope.module;
    for (std::size_t i = 0; i < mod.params.size(); ++i) scope.param_pos[mod.params[i]] = i;
    for (const auto& d : mod.defines) scope.defines[d.name] = &d;
    stack.push_back(mod.name);
    for (const auto& inst : mod.instances) {
      const model::ModuleDecl* target = ast_.find(inst.module);
      if (!target) throw ElaborationError(inst.span, "unknown module '" + inst.module + "'");
      if (std::find(stack.begin(), stack.end(), target->name) != stack.end())
        throw ElaborationError(inst.span, "recursive instantiation of module '" + target->name + "'");
      if (target->params.size() != inst.args.size()) {
        std::ostringstream os;
        os << "module '" << target->name << "' expects " << target->params.size()
           << " argument(s), got " << inst.args.size();
        throw ElaborationError(inst.span, os.str());
      }
      auto child = std::make_unique<Scope>();
      child->module = target;
      child->prefix = scope.prefix + inst.name + ".";
      child->caller = &scope;
      child->decl = &inst;
      scope.child_by_name[inst.name] = child.get();
      build_tree(*child, stack);
      scope.children.push_back(std::move(child));
    }
    stack.pop_back();
  }

  void declare_vars(Scope& scope) {
    for (const auto& v : scope.module->vars) {
      int idx = static_cast<int>(ts_.vars.size());
      Variable var;
      var.name = scope.prefix + v.name;
      switch (v.type.kind) {
        case model::VarTypeKind::Boolean:
          var.domain.kind = TypeKind::Bool;
          var.domain.values = {0, 1};
          break;
        case model::VarTypeKind::Enum:
          var.domain.kind = TypeKind::Enum;
          for (const auto& s : v.type.symbols) var.domain.values.push_back(ts_.symbols->intern(s));
          break;
        case model::VarTypeKind::IntRange: var.domain.kind = TypeKind::Int; break;
      }
      scope.var_index[v.name] = idx;
      ts_.index.emplace(var.name, idx);
      ts_.vars.push_back(std::move(var));
      ts_.init_rules.push_back(nullptr);
      ts_.next_rules.push_back(nullptr);
      ts_.next_text.emplace_back();
    }
    for (auto& c : scope.children) declare_vars(*c);
  }

  Value constant_bound(Scope& scope, const model::ExprPtr& e) {
    ExprRef r = elab(scope, *e);
    if (r->op != Op::Const || r->type.kind != TypeKind::Int)
      throw ElaborationError(e->span, "range bound '" + model::pretty_print(*e) +
                                          "' does not resolve to an integer constant");
    return r->value;
  }

  void compute_domains(Scope& scope) {
    for (const auto& v : scope.module->vars) {
      if (v.type.kind != model::VarTypeKind::IntRange) continue;
      auto& dom = ts_.vars[static_cast<std::size_t>(scope.var_index.at(v.name))].domain;
      dom.lo = constant_bound(scope, v.type.lo);
      dom.hi = constant_bound(scope, v.type.hi);
      if (dom.lo > dom.hi) throw ElaborationError(v.span, "empty range for '" + v.name + "'");
      if (static_cast<std::int64_t>(dom.hi) - dom.lo > 1'000'000)
        throw ElaborationError(v.span, "range of '" + v.name + "' too large");
      dom.values.clear();
      for (Value x = dom.lo; x <= dom.hi; ++x) dom.values.push_back(x);
    }
    for (auto& c : scope.children) compute_domains(*c);
  }

  Resolved member(Scope& scope, const std::string& name, SourceSpan span) {
    if (auto it = scope.var_index.find(name); it != scope.var_index.end()) {
      const auto& var = ts_.vars[static_cast<std::size_t>(it->second)];
      return {var_ref(it->second, var.domain.type()), nullptr};
    }
    if (auto it = scope.child_by_name.find(name); it != scope.child_by_name.end())
      return {nullptr, it->second};
    if (scope.defines.count(name) || scope.param_pos.count(name)) return memoized(scope, name, span);
    return {};
  }

  Resolved memoized(Scope& scope, const std::string& name, SourceSpan span) {
    if (auto it = scope.memo.find(name); it != scope.memo.end()) return it->second;
    if (!scope.in_progress.insert(name).second)
      throw ElaborationError(span, "combinational cycle through '" + scope.prefix + name + "'");
    Resolved r;
    try {
      if (auto d = scope.defines.find(name); d != scope.defines.end()) {
        r.expr = elab(scope, *d->second->value);
        if (contains_set(*r.expr))
          throw ElaborationError(d->second->span, "set literal in define '" + name + "'");
      } else {
        const auto& arg = *scope.decl->args[scope.param_pos.at(name)];
        r = resolve_value(*scope.caller, arg);
      }
    } catch (...) {
      scope.in_progress.erase(name);
      throw;
    }
    scope.in_progress.erase(name);
    scope.memo[name] = r;
    return r;
  }

  // Argument expressions may denote an instance (e.g. a globals module).
  Resolved resolve_value(Scope& scope, const model::Expr& e) {
    if (e.kind == ExprKind::Name) return resolve_name(scope, e);
    return {elab(scope, e), nullptr};
  }

  Resolved resolve_name(Scope& scope, const model::Expr& e) {
    const auto& path = e.path;
    Resolved cur = member(scope, path[0], e.span);
    if (!cur.expr && !cur.instance) {
      if (path.size() == 1 && enum_symbols_.count(path[0])) {
        Value id = *ts_.symbols->find(path[0]);
        return {constant(id, Type::enumeration({id})), nullptr};
      }
      throw ElaborationError(e.span, "unresolved identifier '" + path[0] + "'");
    }
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (!cur.instance)
        throw ElaborationError(e.span, "'" + path[i - 1] + "' is not a module instance");
      Resolved nxt = member(*cur.instance, path[i], e.span);
      if (!nxt.expr && !nxt.instance)
        throw ElaborationError(e.span, "unresolved identifier '" + e.dotted_name() + "'");
      cur = nxt;
    }
    return cur;
  }

  ExprRef elab(Scope& scope, const model::Expr& e) {
    return build(e, [&](const model::Expr& name) {
      Resolved r = resolve_name(scope, name);
      if (!r.expr)
        throw ElaborationError(name.span, "module instance '" + name.dotted_name() + "' used as a value");
      return r.expr;
    });
  }

  void elaborate_defines(Scope& scope) {
    for (const auto& d : scope.module->defines) {
      try {
        Resolved r = memoized(scope, d.name, d.span);
        if (r.expr) ts_.defines[scope.prefix + d.name] = r.expr;
      } catch (const ElaborationError& e) {
        report(e);
      }
    }
    for (auto& c : scope.children) elaborate_defines(*c);
  }

  void check_assignable(const Variable& var, const ExprRef& value, SourceSpan span) {
    const Type& t = value->type;
    if (t.kind != var.domain.kind)
      throw ElaborationError(span, "type mismatch assigning to '" + var.name + "'");
    if (t.kind == TypeKind::Enum) {
      for (Value s : t.symbols)
        if (!var.domain.contains(s))
          throw ElaborationError(span, "value '" + ts_.symbols->name(s) + "' not in domain of '" +
                                           var.name + "'");
    }
    if (t.kind == TypeKind::Int && value->op == Op::Const && !var.domain.contains(value->value))
      throw ElaborationError(span, "constant " + std::to_string(value->value) +
                                       " outside range of '" + var.name + "'");
  }

  void elaborate_rules(Scope& scope) {
    for (const auto& a : scope.module->assigns) {
      try {
        auto it = scope.var_index.find(a.target);
        if (it == scope.var_index.end())
          throw ElaborationError(a.span, "assignment to undeclared variable '" + a.target + "'");
        auto idx = static_cast<std::size_t>(it->second);
        auto& slot = a.kind == model::AssignKind::Init ? ts_.init_rules[idx] : ts_.next_rules[idx];
        if (slot)
          throw ElaborationError(a.span, std::string("duplicate ") +
                                             (a.kind == model::AssignKind::Init ? "init" : "next") +
                                             " rule for '" + a.target + "'");
        ExprRef value = elab(scope, *a.value);
        check_assignable(ts_.vars[idx], value, a.value->span);
        slot = value;
        if (a.kind == model::AssignKind::Next) ts_.next_text[idx] = model::pretty_print(*a.value);
        if (contains_set(*value))
          ts_.choice_points.push_back(
              {static_cast<int>(idx),
               a.kind == model::AssignKind::Init ? RuleKind::Init : RuleKind::Next, a.span});
      } catch (const ElaborationError& e) {
        report(e);
      }
    }
    for (auto& c : scope.children) elaborate_rules(*c);
  }

  void order_init() {
    std::vector<int> state(ts_.vars.size(), 0);  // 0 new, 1 active, 2 done
    std::function<void(int)> visit = [&](int v) {
      auto& st = state[static_cast<std::size_t>(v)];
      if (st == 2) return;
      if (st == 1)
        throw ElaborationError({}, "circular init dependency through '" +
                                       ts_.vars[static_cast<std::size_t>(v)].name + "'");
      st = 1;
      if (const auto& rule = ts_.init_rules[static_cast<std::size_t>(v)]) {
        std::vector<int> deps;
        collect_vars(*rule, deps);
        std::sort(deps.begin(), deps.end());
        for (int d : deps)
          if (d != v) visit(d);
          else throw ElaborationError({}, "init rule of '" + ts_.vars[static_cast<std::size_t>(v)].name + "' reads itself");
      }
      st = 2;
      ts_.init_order.push_back(v);
    };
    try {
      for (std::size_t v = 0; v < ts_.vars.size(); ++v) visit(static_cast<int>(v));
    } catch (const ElaborationError& e) {
      report(e);
    }
  }

  const model::ModelAst& ast_;
  std::vector<model::Diagnostic>* sink_;
  TransitionSystem ts_;
  std::unique_ptr<Scope> root_;
  std::set<std::string> enum_symbols_;
};

}  // namespace

TransitionSystem elaborate(const model::ModelAst& ast, std::vector<model::Diagnostic>* sink) {
  Elaborator e(ast, sink);
  return e.run();
}

TransitionSystem load_model(std::string_view source) { return elaborate(model::parse_model(source)); }

ExprRef resolve_expression(const TransitionSystem& ts, const model::Expr& e) {
  return build(e, [&ts](const model::Expr& name) -> ExprRef {
    std::string q = name.dotted_name();
    if (auto idx = ts.find(q)) {
      const auto& var = ts.vars[static_cast<std::size_t>(*idx)];
      return var_ref(*idx, var.domain.type());
    }
    if (auto it = ts.defines.find(q); it != ts.defines.end()) return it->second;
    if (name.path.size() == 1) {
      if (auto id = ts.symbols->find(q)) return constant(*id, Type::enumeration({*id}));
    }
    throw ElaborationError(name.span, "unresolved identifier '" + q + "'");
  });
}

}  // namespace vcsmc::sem
