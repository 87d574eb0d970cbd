#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vcsmc::model {

struct SourceSpan {
  int line = 0;
  int column = 0;
};

enum class ExprKind { Name, BoolLit, IntLit, Unary, Binary, Case, Set };
enum class UnaryOp { Not, Neg };
enum class BinaryOp { Implies, Iff, Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct CaseArm {
  ExprPtr guard;
  ExprPtr value;
};

/// Source-level expression. Immutable once built; shared freely between ASTs.
struct Expr {
  ExprKind kind = ExprKind::BoolLit;
  SourceSpan span;
  std::vector<std::string> path;  // Name: `a` or dotted `inst.a`
  bool bool_value = false;
  std::int64_t int_value = 0;
  UnaryOp unary_op = UnaryOp::Not;
  BinaryOp binary_op = BinaryOp::And;
  std::vector<ExprPtr> operands;  // Unary: 1, Binary: 2, Set: n
  std::vector<CaseArm> arms;

  std::string dotted_name() const;
};

ExprPtr make_name(std::vector<std::string> path, SourceSpan span = {});
ExprPtr make_bool(bool value, SourceSpan span = {});
ExprPtr make_int(std::int64_t value, SourceSpan span = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span = {});
ExprPtr make_case(std::vector<CaseArm> arms, SourceSpan span = {});
ExprPtr make_set(std::vector<ExprPtr> elements, SourceSpan span = {});

const char* to_string(BinaryOp op);

enum class VarTypeKind { Boolean, Enum, IntRange };

struct VarType {
  VarTypeKind kind = VarTypeKind::Boolean;
  std::vector<std::string> symbols;  // Enum
  ExprPtr lo;                        // IntRange; may name constant defines
  ExprPtr hi;
};

struct VarDecl {
  std::string name;
  VarType type;
  SourceSpan span;
};

struct DefineDecl {
  std::string name;
  ExprPtr value;
  SourceSpan span;
};

enum class AssignKind { Init, Next };

struct AssignRule {
  AssignKind kind = AssignKind::Init;
  std::string target;
  ExprPtr value;
  SourceSpan span;
};

struct InstanceDecl {
  std::string name;
  std::string module;
  std::vector<ExprPtr> args;
  SourceSpan span;
};

struct ModuleDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<VarDecl> vars;
  std::vector<DefineDecl> defines;
  std::vector<AssignRule> assigns;
  std::vector<InstanceDecl> instances;
  SourceSpan span;
};

struct ModelAst {
  std::vector<ModuleDecl> modules;

  /// The unique module named "main", or nullptr.
  const ModuleDecl* main() const;
  const ModuleDecl* find(const std::string& name) const;
};

// Structural equality ignores source spans.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);
bool structurally_equal(const ModuleDecl& a, const ModuleDecl& b);
bool structurally_equal(const ModelAst& a, const ModelAst& b);

}  // namespace vcsmc::model
