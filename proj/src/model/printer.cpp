#include "vcsmc/model/printer.hpp"

#include <sstream>

namespace vcsmc::model {

namespace {

constexpr int kPrimary = 8;
constexpr int kUnary = 7;

int precedence(const Expr& e) {
  if (e.kind == ExprKind::Unary) return kUnary;
  if (e.kind != ExprKind::Binary) return kPrimary;
  switch (e.binary_op) {
    case BinaryOp::Iff: return 1;
    case BinaryOp::Implies: return 2;
    case BinaryOp::Or: return 3;
    case BinaryOp::And: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 6;
    default: return 5;  // comparisons
  }
}

std::string print(const Expr& e, int min_prec, int indent);

std::string print_case(const Expr& e, int indent) {
  std::string pad(indent, ' ');
  std::ostringstream os;
  os << "case\n";
  for (const auto& arm : e.arms) {
    os << pad << "  " << print(*arm.guard, 0, indent + 2) << " : "
       << print(*arm.value, 0, indent + 2) << ";\n";
  }
  os << pad << "esac";
  return os.str();
}

std::string print(const Expr& e, int min_prec, int indent) {
  std::string body;
  switch (e.kind) {
    case ExprKind::Name: body = e.dotted_name(); break;
    case ExprKind::BoolLit: body = e.bool_value ? "TRUE" : "FALSE"; break;
    case ExprKind::IntLit:
      body = std::to_string(e.int_value);
      if (e.int_value < 0) body = "(" + body + ")";
      break;
    case ExprKind::Unary: {
      std::string inner = print(*e.operands[0], kUnary, indent);
      if (!inner.empty() && inner[0] == '-') inner = "(" + inner + ")";
      body = (e.unary_op == UnaryOp::Not ? "!" : "-") + inner;
      break;
    }
    case ExprKind::Binary: {
      int p = precedence(e);
      int lhs_min = p;
      int rhs_min = p + 1;
      if (e.binary_op == BinaryOp::Implies) {
        lhs_min = p + 1;
        rhs_min = p;
      } else if (p == 5) {
        lhs_min = p + 1;
      }
      body = print(*e.operands[0], lhs_min, indent) + " " + to_string(e.binary_op) + " " +
             print(*e.operands[1], rhs_min, indent);
      break;
    }
    case ExprKind::Case: body = print_case(e, indent); break;
    case ExprKind::Set: {
      body = "{";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) body += ", ";
        body += print(*e.operands[i], 0, indent);
      }
      body += "}";
      break;
    }
  }
  if (precedence(e) < min_prec) return "(" + body + ")";
  return body;
}

std::string print_type(const VarType& t) {
  switch (t.kind) {
    case VarTypeKind::Boolean: return "boolean";
    case VarTypeKind::Enum: {
      std::string s = "{";
      for (std::size_t i = 0; i < t.symbols.size(); ++i) {
        if (i) s += ", ";
        s += t.symbols[i];
      }
      return s + "}";
    }
    case VarTypeKind::IntRange:
      return print(*t.lo, kUnary, 0) + ".." + print(*t.hi, kUnary, 0);
  }
  return "?";
}

}  // namespace

std::string pretty_print(const Expr& expr) { return print(expr, 0, 0); }

std::string pretty_print(const ModuleDecl& m) {
  std::ostringstream os;
  os << "MODULE " << m.name;
  if (!m.params.empty()) {
    os << "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) os << (i ? ", " : "") << m.params[i];
    os << ")";
  }
  os << "\n";
  if (!m.vars.empty() || !m.instances.empty()) {
    os << "VAR\n";
    for (const auto& v : m.vars) os << "  " << v.name << " : " << print_type(v.type) << ";\n";
    for (const auto& inst : m.instances) {
      os << "  " << inst.name << " : " << inst.module;
      if (!inst.args.empty()) {
        os << "(";
        for (std::size_t i = 0; i < inst.args.size(); ++i)
          os << (i ? ", " : "") << print(*inst.args[i], 0, 4);
        os << ")";
      }
      os << ";\n";
    }
  }
  if (!m.defines.empty()) {
    os << "DEFINE\n";
    for (const auto& d : m.defines) os << "  " << d.name << " := " << print(*d.value, 0, 2) << ";\n";
  }
  if (!m.assigns.empty()) {
    os << "ASSIGN\n";
    for (const auto& a : m.assigns) {
      os << "  " << (a.kind == AssignKind::Init ? "init" : "next") << "(" << a.target << ") := ";
      if (a.value->kind == ExprKind::Case) {
        os << "\n    " << print(*a.value, 0, 4) << ";\n";
      } else {
        os << print(*a.value, 0, 2) << ";\n";
      }
    }
  }
  return os.str();
}

std::string pretty_print(const ModelAst& ast) {
  std::string out;
  for (std::size_t i = 0; i < ast.modules.size(); ++i) {
    if (i) out += "\n";
    out += pretty_print(ast.modules[i]);
  }
  return out;
}

}  // namespace vcsmc::model
