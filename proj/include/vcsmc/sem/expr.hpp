#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace vcsmc::sem {

/// Runtime value of a state variable: 0/1 for booleans, the integer itself
/// for ranges, the symbol id for enumerations.
using Value = std::int32_t;
using State = std::vector<Value>;

/// Enumeration symbols are global to a model so that two enum variables
/// sharing a literal compare by plain integer equality.
class SymbolTable {
 public:
  Value intern(const std::string& name);
  std::optional<Value> find(const std::string& name) const;
  const std::string& name(Value id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Value> ids_;
};

enum class TypeKind { Bool, Int, Enum };

struct Type {
  TypeKind kind = TypeKind::Bool;
  std::vector<Value> symbols;  // Enum: sorted symbol ids that may occur

  static Type boolean() { return {TypeKind::Bool, {}}; }
  static Type integer() { return {TypeKind::Int, {}}; }
  static Type enumeration(std::vector<Value> symbols);
  bool operator==(const Type&) const = default;
};

std::string describe(const Type& t, const SymbolTable& symbols);

enum class Op : std::uint8_t {
  Const,
  Var,      // current-state read
  NextVar,  // next-state read; only legal in monitor update rules
  Not,
  Neg,
  And,
  Or,
  Implies,
  Iff,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Add,
  Sub,
  Case,  // kids: guard0, value0, guard1, value1, ...
  Set,   // nondeterministic choice among kids
};

struct Node;
using ExprRef = std::shared_ptr<const Node>;

/// Elaborated expression over flat variable indices.
struct Node {
  Op op = Op::Const;
  Type type;
  Value value = 0;  // Const
  int var = -1;     // Var / NextVar
  std::vector<ExprRef> kids;
};

/// Type error raised while building expressions. Carries no position; callers
/// attach the source span of the offending construct.
class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic result that does not fit the value representation, or a read
/// that the evaluation context cannot serve.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExprRef constant(Value v, Type t);
ExprRef bool_constant(bool b);
ExprRef var_ref(int index, Type t);
ExprRef next_var_ref(int index, Type t);
ExprRef make_not(ExprRef a);
ExprRef make_neg(ExprRef a);
/// Builds a type-checked binary node, folding constants.
ExprRef make_binary(Op op, ExprRef a, ExprRef b);
ExprRef make_case(std::vector<std::pair<ExprRef, ExprRef>> arms);
ExprRef make_set(std::vector<ExprRef> elements);

/// Replaces every Var read by a NextVar read (monitor rules).
ExprRef shift_to_next(const ExprRef& e);

bool contains_set(const Node& e);
bool is_true_literal(const ExprRef& e);

/// Strict evaluation of a set-free expression. `next` is consulted for
/// NextVar reads and may be empty otherwise.
Value eval(const Node& e, std::span<const Value> current, std::span<const Value> next = {});

/// Evaluates an rule right-hand side that may contain set literals in value
/// position. Appends the options in listed order, without duplicates.
void eval_choices(const Node& e, std::span<const Value> current, std::span<const Value> next,
                  std::vector<Value>& out);

/// Structural equality and hashing over elaborated expressions.
bool equal(const Node& a, const Node& b);
std::size_t hash(const Node& e);

/// Variables read by the expression (Var and NextVar).
void collect_vars(const Node& e, std::vector<int>& out);

}  // namespace vcsmc::sem
