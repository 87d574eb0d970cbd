#include "vcsmc/model/ast.hpp"

namespace vcsmc::model {

std::string Expr::dotted_name() const {
  std::string out;
  for (const auto& part : path) {
    if (!out.empty()) out += '.';
    out += part;
  }
  return out;
}

ExprPtr make_name(std::vector<std::string> path, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Name;
  e->path = std::move(path);
  e->span = span;
  return e;
}

ExprPtr make_bool(bool value, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolLit;
  e->bool_value = value;
  e->span = span;
  return e;
}

ExprPtr make_int(std::int64_t value, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::IntLit;
  e->int_value = value;
  e->span = span;
  return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->unary_op = op;
  e->operands.push_back(std::move(operand));
  e->span = span;
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->binary_op = op;
  e->operands.push_back(std::move(lhs));
  e->operands.push_back(std::move(rhs));
  e->span = span;
  return e;
}

ExprPtr make_case(std::vector<CaseArm> arms, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Case;
  e->arms = std::move(arms);
  e->span = span;
  return e;
}

ExprPtr make_set(std::vector<ExprPtr> elements, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Set;
  e->operands = std::move(elements);
  e->span = span;
  return e;
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Implies: return "->";
    case BinaryOp::Iff: return "<->";
    case BinaryOp::Or: return "|";
    case BinaryOp::And: return "&";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
  }
  return "?";
}

const ModuleDecl* ModelAst::main() const {
  const ModuleDecl* found = nullptr;
  for (const auto& m : modules) {
    if (m.name == "main") {
      if (found) return nullptr;
      found = &m;
    }
  }
  return found;
}

const ModuleDecl* ModelAst::find(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Name: return a.path == b.path;
    case ExprKind::BoolLit: return a.bool_value == b.bool_value;
    case ExprKind::IntLit: return a.int_value == b.int_value;
    case ExprKind::Unary:
      return a.unary_op == b.unary_op && structurally_equal(a.operands[0], b.operands[0]);
    case ExprKind::Binary:
      return a.binary_op == b.binary_op && structurally_equal(a.operands[0], b.operands[0]) &&
             structurally_equal(a.operands[1], b.operands[1]);
    case ExprKind::Set:
      if (a.operands.size() != b.operands.size()) return false;
      for (std::size_t i = 0; i < a.operands.size(); ++i)
        if (!structurally_equal(a.operands[i], b.operands[i])) return false;
      return true;
    case ExprKind::Case:
      if (a.arms.size() != b.arms.size()) return false;
      for (std::size_t i = 0; i < a.arms.size(); ++i) {
        if (!structurally_equal(a.arms[i].guard, b.arms[i].guard)) return false;
        if (!structurally_equal(a.arms[i].value, b.arms[i].value)) return false;
      }
      return true;
  }
  return false;
}

namespace {

bool equal_type(const VarType& a, const VarType& b) {
  return a.kind == b.kind && a.symbols == b.symbols && structurally_equal(a.lo, b.lo) &&
         structurally_equal(a.hi, b.hi);
}

}  // namespace

bool structurally_equal(const ModuleDecl& a, const ModuleDecl& b) {
  if (a.name != b.name || a.params != b.params) return false;
  if (a.vars.size() != b.vars.size() || a.defines.size() != b.defines.size() ||
      a.assigns.size() != b.assigns.size() || a.instances.size() != b.instances.size())
    return false;
  for (std::size_t i = 0; i < a.vars.size(); ++i)
    if (a.vars[i].name != b.vars[i].name || !equal_type(a.vars[i].type, b.vars[i].type))
      return false;
  for (std::size_t i = 0; i < a.defines.size(); ++i)
    if (a.defines[i].name != b.defines[i].name ||
        !structurally_equal(a.defines[i].value, b.defines[i].value))
      return false;
  for (std::size_t i = 0; i < a.assigns.size(); ++i)
    if (a.assigns[i].kind != b.assigns[i].kind || a.assigns[i].target != b.assigns[i].target ||
        !structurally_equal(a.assigns[i].value, b.assigns[i].value))
      return false;
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    const auto& x = a.instances[i];
    const auto& y = b.instances[i];
    if (x.name != y.name || x.module != y.module || x.args.size() != y.args.size()) return false;
    for (std::size_t j = 0; j < x.args.size(); ++j)
      if (!structurally_equal(x.args[j], y.args[j])) return false;
  }
  return true;
}

bool structurally_equal(const ModelAst& a, const ModelAst& b) {
  if (a.modules.size() != b.modules.size()) return false;
  for (std::size_t i = 0; i < a.modules.size(); ++i)
    if (!structurally_equal(a.modules[i], b.modules[i])) return false;
  return true;
}

}  // namespace vcsmc::model
