#include "vcsmc/model/validate.hpp"

#include <functional>
#include <map>
#include <set>

#include "vcsmc/sem/elaborate.hpp"

namespace vcsmc::model {

namespace {

enum class Kind { Var, Define, Instance, Param };

class Checker {
 public:
  explicit Checker(const ModelAst& ast) : ast_(ast) {}

  std::vector<Diagnostic> run() {
    module_table();
    for (const auto& m : ast_.modules)
      for (const auto& v : m.vars)
        if (v.type.kind == VarTypeKind::Enum) symbols_.insert(v.type.symbols.begin(), v.type.symbols.end());
    for (const auto& m : ast_.modules) check_module(m);
    instantiation_cycles();
    return std::move(out_);
  }

 private:
  void error(SourceSpan span, std::string message) {
    out_.push_back({Severity::Error, span, std::move(message)});
  }

  void module_table() {
    int mains = 0;
    for (const auto& m : ast_.modules) {
      if (m.name == "main") {
        if (++mains == 2) error(m.span, "duplicate main");
        if (mains == 1 && !m.params.empty()) error(m.span, "module 'main' must not have parameters");
        continue;
      }
      if (!by_name_.emplace(m.name, &m).second) error(m.span, "duplicate module '" + m.name + "'");
    }
    if (mains == 0) error({}, "missing module 'main'");
    for (const auto& m : ast_.modules)
      if (m.name == "main") {
        by_name_.emplace(m.name, &m);
        break;
      }
  }

  std::map<std::string, Kind> local_names(const ModuleDecl& m) {
    std::map<std::string, Kind> names;
    auto add = [&](const std::string& n, Kind k, SourceSpan span) {
      if (!names.emplace(n, k).second) error(span, "duplicate declaration of '" + n + "' in module '" + m.name + "'");
    };
    for (const auto& p : m.params) add(p, Kind::Param, m.span);
    for (const auto& v : m.vars) add(v.name, Kind::Var, v.span);
    for (const auto& d : m.defines) add(d.name, Kind::Define, d.span);
    for (const auto& i : m.instances) add(i.name, Kind::Instance, i.span);
    return names;
  }

  void check_module(const ModuleDecl& m) {
    auto names = local_names(m);

    for (const auto& v : m.vars) {
      if (v.type.kind == VarTypeKind::Enum) {
        std::set<std::string> distinct(v.type.symbols.begin(), v.type.symbols.end());
        if (distinct.size() != v.type.symbols.size())
          error(v.span, "repeated symbol in enumeration of '" + v.name + "'");
        else if (distinct.size() < 2)
          error(v.span, "enumeration of '" + v.name + "' needs at least two symbols");
      }
      if (v.type.kind == VarTypeKind::IntRange) {
        check_expr(m, names, *v.type.lo, false);
        check_expr(m, names, *v.type.hi, false);
      }
    }

    for (const auto& inst : m.instances) {
      auto it = by_name_.find(inst.module);
      if (it == by_name_.end() || inst.module == "main") {
        error(inst.span, "unknown module '" + inst.module + "'");
      } else if (it->second->params.size() != inst.args.size()) {
        error(inst.span, "module '" + inst.module + "' expects " + std::to_string(it->second->params.size()) +
                             " argument(s), got " + std::to_string(inst.args.size()));
      }
      for (const auto& a : inst.args) check_expr(m, names, *a, false);
    }

    for (const auto& d : m.defines) check_expr(m, names, *d.value, false);

    std::set<std::pair<std::string, AssignKind>> seen;
    for (const auto& a : m.assigns) {
      auto it = names.find(a.target);
      if (it == names.end() || it->second != Kind::Var) {
        error(a.span, "assignment to undeclared variable '" + a.target + "'");
      } else if (!seen.emplace(a.target, a.kind).second) {
        error(a.span, std::string("duplicate ") + (a.kind == AssignKind::Init ? "init" : "next") +
                          " rule for '" + a.target + "'");
      }
      check_expr(m, names, *a.value, true);
    }

    define_cycles(m);
  }

  // `value_position` is true where a set literal may stand: the rule
  // right-hand side itself, a case arm result in that position, or a set element.
  void check_expr(const ModuleDecl& m, const std::map<std::string, Kind>& names, const Expr& e,
                  bool value_position) {
    switch (e.kind) {
      case ExprKind::Name: resolve(m, names, e); return;
      case ExprKind::BoolLit:
      case ExprKind::IntLit: return;
      case ExprKind::Unary:
      case ExprKind::Binary:
        for (const auto& o : e.operands) check_expr(m, names, *o, false);
        return;
      case ExprKind::Case: {
        const auto& last = e.arms.back();
        if (last.guard->kind != ExprKind::BoolLit || !last.guard->bool_value)
          error(e.span, "case expression must end with a 'TRUE' default arm");
        for (const auto& arm : e.arms) {
          check_expr(m, names, *arm.guard, false);
          check_expr(m, names, *arm.value, value_position);
        }
        return;
      }
      case ExprKind::Set:
        if (!value_position) error(e.span, "set literal allowed only as the value of an init/next rule");
        for (const auto& o : e.operands) check_expr(m, names, *o, value_position);
        return;
    }
  }

  void resolve(const ModuleDecl& m, const std::map<std::string, Kind>& names, const Expr& e) {
    const auto& path = e.path;
    auto it = names.find(path[0]);
    if (it == names.end()) {
      if (path.size() == 1 && symbols_.count(path[0])) return;
      error(e.span, "unresolved identifier '" + e.dotted_name() + "'");
      return;
    }
    if (path.size() == 1) return;
    // Members of a parameter depend on the actual argument; checked at elaboration.
    if (it->second == Kind::Param) return;
    if (it->second != Kind::Instance) {
      error(e.span, "'" + path[0] + "' is not a module instance");
      return;
    }
    const ModuleDecl* cur = nullptr;
    for (const auto& i : m.instances)
      if (i.name == path[0]) cur = module(i.module);
    for (std::size_t k = 1; cur && k < path.size(); ++k) {
      const ModuleDecl* next = nullptr;
      bool found = false;
      for (const auto& v : cur->vars) found |= v.name == path[k];
      for (const auto& d : cur->defines) found |= d.name == path[k];
      for (const auto& i : cur->instances)
        if (i.name == path[k]) {
          found = true;
          next = module(i.module);
        }
      bool param = std::find(cur->params.begin(), cur->params.end(), path[k]) != cur->params.end();
      if (param) return;
      if (!found) {
        error(e.span, "unresolved identifier '" + e.dotted_name() + "'");
        return;
      }
      if (k + 1 < path.size() && !next) {
        error(e.span, "'" + path[k] + "' is not a module instance");
        return;
      }
      cur = next;
    }
  }

  const ModuleDecl* module(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second;
  }

  void define_cycles(const ModuleDecl& m) {
    std::map<std::string, const DefineDecl*> defs;
    for (const auto& d : m.defines) defs.emplace(d.name, &d);
    std::map<std::string, int> state;
    std::function<bool(const std::string&)> visit = [&](const std::string& n) -> bool {
      int& st = state[n];
      if (st == 2) return false;
      if (st == 1) return true;
      st = 1;
      std::vector<std::string> refs;
      std::function<void(const Expr&)> collect = [&](const Expr& e) {
        if (e.kind == ExprKind::Name && e.path.size() == 1 && defs.count(e.path[0])) refs.push_back(e.path[0]);
        for (const auto& o : e.operands) collect(*o);
        for (const auto& a : e.arms) {
          collect(*a.guard);
          collect(*a.value);
        }
      };
      collect(*defs.at(n)->value);
      for (const auto& r : refs)
        if (visit(r)) return true;
      st = 2;
      return false;
    };
    for (const auto& d : m.defines) {
      if (state[d.name] == 2) continue;
      if (visit(d.name)) {
        error(d.span, "combinational cycle through define '" + d.name + "' in module '" + m.name + "'");
        return;
      }
    }
  }

  void instantiation_cycles() {
    std::map<std::string, int> state;
    std::function<bool(const ModuleDecl&)> visit = [&](const ModuleDecl& m) -> bool {
      int& st = state[m.name];
      if (st == 1) return true;
      if (st == 2) return false;
      st = 1;
      for (const auto& i : m.instances)
        if (const ModuleDecl* t = module(i.module); t && visit(*t)) {
          if (!cycle_reported_) error(i.span, "recursive instantiation of module '" + i.module + "'");
          cycle_reported_ = true;
          return true;
        }
      st = 2;
      return false;
    };
    for (const auto& [name, m] : by_name_)
      if (visit(*m)) return;
  }

  const ModelAst& ast_;
  std::map<std::string, const ModuleDecl*> by_name_;
  std::set<std::string> symbols_;
  std::vector<Diagnostic> out_;
  bool cycle_reported_ = false;
};

}  // namespace

std::vector<Diagnostic> validate_model(const ModelAst& ast) {
  std::vector<Diagnostic> out = Checker(ast).run();
  if (!out.empty()) return out;
  try {
    sem::elaborate(ast, &out);
  } catch (const ElaborationError& e) {
    out.push_back({Severity::Error, e.span(), e.message()});
  }
  return out;
}

}  // namespace vcsmc::model
