#include "vcsmc/ltl/parser.hpp"

#include "vcsmc/model/diagnostic.hpp"
#include "vcsmc/model/parser.hpp"
#include "vcsmc/model/printer.hpp"
#include "vcsmc/sem/elaborate.hpp"

namespace vcsmc::ltl {

using model::TokenKind;
using model::TokenStream;

namespace {

bool is_operator_word(const model::Token& t) {
  if (t.kind != TokenKind::Identifier || t.text.size() != 1) return false;
  return std::string_view("GFXUROYH").find(t.text[0]) != std::string_view::npos;
}

class Parser {
 public:
  Parser(TokenStream& ts, const sem::TransitionSystem& sys) : ts_(ts), sys_(sys) {}

  FormulaRef implies() {
    FormulaRef lhs = disjunction();
    if (ts_.accept_symbol("->")) return make_binary(LtlOp::Implies, lhs, implies());
    return lhs;
  }

 private:
  FormulaRef disjunction() {
    FormulaRef lhs = conjunction();
    while (ts_.accept_symbol("|")) lhs = make_binary(LtlOp::Or, lhs, conjunction());
    return lhs;
  }

  FormulaRef conjunction() {
    FormulaRef lhs = until();
    while (ts_.accept_symbol("&")) lhs = make_binary(LtlOp::And, lhs, until());
    return lhs;
  }

  FormulaRef until() {
    FormulaRef lhs = unary();
    if (ts_.is_word("U") || ts_.is_word("R")) {
      LtlOp op = ts_.next().text == "U" ? LtlOp::U : LtlOp::R;
      return make_binary(op, lhs, until());
    }
    return lhs;
  }

  FormulaRef unary() {
    if (ts_.accept_symbol("!")) return make_unary(LtlOp::Not, unary());
    const model::Token& t = ts_.peek();
    if (is_operator_word(t) && t.text != "U" && t.text != "R") {
      char c = ts_.next().text[0];
      if ((c == 'F' || c == 'G') && ts_.accept_symbol("[")) {
        model::SourceSpan span = ts_.peek().span;
        auto lo = ts_.expect_integer();
        ts_.expect_symbol(",");
        auto hi = ts_.expect_integer();
        ts_.expect_symbol("]");
        if (lo > hi) throw model::ParseError(span, "empty window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        if (hi > 100000) throw model::ParseError(span, "window bound too large");
        return make_bounded(c == 'F' ? LtlOp::BoundedF : LtlOp::BoundedG, static_cast<int>(lo),
                            static_cast<int>(hi), unary());
      }
      switch (c) {
        case 'X': return make_unary(LtlOp::X, unary());
        case 'F': return make_unary(LtlOp::F, unary());
        case 'G': return make_unary(LtlOp::G, unary());
        case 'O': return make_unary(LtlOp::O, unary());
        case 'Y': return make_unary(LtlOp::Y, unary());
        default: return make_unary(LtlOp::H, unary());
      }
    }
    return primary();
  }

  // A parenthesis opens a nested formula unless the group is an operand of a
  // comparison or arithmetic operator, as in `(a + 1) = b`.
  bool paren_is_atom() const {
    int depth = 0;
    for (std::size_t k = 0;; ++k) {
      const auto& t = ts_.peek(k);
      if (t.kind == TokenKind::End) return false;
      if (t.kind != TokenKind::Symbol) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")" && --depth == 0) {
        const auto& after = ts_.peek(k + 1);
        if (after.kind != TokenKind::Symbol) return false;
        for (const char* op : {"=", "!=", "<", "<=", ">", ">=", "+", "-"})
          if (after.text == op) return true;
        return false;
      }
    }
  }

  FormulaRef primary() {
    if (ts_.is_symbol("(") && !paren_is_atom()) {
      ts_.next();
      FormulaRef inner = implies();
      ts_.expect_symbol(")");
      return inner;
    }
    if (is_operator_word(ts_.peek())) ts_.fail({"atom", "("});
    model::ExprPtr e = model::parse_comparison(ts_);
    if (e->kind == model::ExprKind::BoolLit) return e->bool_value ? make_true() : make_false();
    sem::ExprRef ref = sem::resolve_expression(sys_, *e);
    if (ref->type.kind != sem::TypeKind::Bool)
      throw model::ElaborationError(e->span, "atom '" + model::pretty_print(*e) + "' is not boolean");
    if (sem::contains_set(*ref)) throw model::ElaborationError(e->span, "set literal in specification atom");
    return make_atom(ref, model::pretty_print(*e));
  }

  TokenStream& ts_;
  const sem::TransitionSystem& sys_;
};

}  // namespace

FormulaRef parse_ltl(std::string_view text, const sem::TransitionSystem& ts) {
  TokenStream stream(model::tokenize(text));
  Parser p(stream, ts);
  FormulaRef f = p.implies();
  if (!stream.at_end()) stream.fail({"end of input", "&", "|", "->", "U", "R"});
  return f;
}

}  // namespace vcsmc::ltl
