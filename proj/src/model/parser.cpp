#include "vcsmc/model/parser.hpp"

#include <set>

namespace vcsmc::model {

namespace {

ExprPtr parse_iff(TokenStream& ts);
ExprPtr parse_additive(TokenStream& ts);

ExprPtr parse_primary(TokenStream& ts) {
  const Token& t = ts.peek();
  SourceSpan span = t.span;
  if (t.kind == TokenKind::Integer) {
    return make_int(ts.next().value, span);
  }
  if (t.kind == TokenKind::Identifier) {
    if (t.text == "TRUE") {
      ts.next();
      return make_bool(true, span);
    }
    if (t.text == "FALSE") {
      ts.next();
      return make_bool(false, span);
    }
    if (t.text == "case") {
      ts.next();
      std::vector<CaseArm> arms;
      while (!ts.is_word("esac")) {
        if (ts.at_end()) ts.fail({"esac"});
        CaseArm arm;
        arm.guard = parse_iff(ts);
        ts.expect_symbol(":");
        arm.value = parse_iff(ts);
        ts.expect_symbol(";");
        arms.push_back(std::move(arm));
      }
      ts.expect_word("esac");
      if (arms.empty()) throw ParseError(span, "case expression without arms");
      return make_case(std::move(arms), span);
    }
    std::vector<std::string> path{ts.expect_identifier().text};
    while (ts.is_symbol(".") && ts.peek(1).kind == TokenKind::Identifier) {
      ts.next();
      path.push_back(ts.expect_identifier().text);
    }
    return make_name(std::move(path), span);
  }
  if (ts.accept_symbol("(")) {
    ExprPtr inner = parse_iff(ts);
    ts.expect_symbol(")");
    return inner;
  }
  if (ts.accept_symbol("{")) {
    std::vector<ExprPtr> elems{parse_iff(ts)};
    while (ts.accept_symbol(",")) elems.push_back(parse_iff(ts));
    ts.expect_symbol("}");
    return make_set(std::move(elems), span);
  }
  ts.fail({"identifier", "integer", "TRUE", "FALSE", "case", "(", "{"});
}

ExprPtr parse_unary(TokenStream& ts) {
  SourceSpan span = ts.peek().span;
  if (ts.accept_symbol("!")) return make_unary(UnaryOp::Not, parse_unary(ts), span);
  if (ts.accept_symbol("-")) return make_unary(UnaryOp::Neg, parse_unary(ts), span);
  return parse_primary(ts);
}

ExprPtr parse_additive(TokenStream& ts) {
  ExprPtr lhs = parse_unary(ts);
  for (;;) {
    SourceSpan span = ts.peek().span;
    if (ts.accept_symbol("+")) {
      lhs = make_binary(BinaryOp::Add, lhs, parse_unary(ts), span);
    } else if (ts.accept_symbol("-")) {
      lhs = make_binary(BinaryOp::Sub, lhs, parse_unary(ts), span);
    } else {
      return lhs;
    }
  }
}

ExprPtr parse_cmp(TokenStream& ts) {
  ExprPtr lhs = parse_additive(ts);
  static const std::pair<const char*, BinaryOp> kOps[] = {
      {"=", BinaryOp::Eq},  {"!=", BinaryOp::Ne}, {"<=", BinaryOp::Le},
      {">=", BinaryOp::Ge}, {"<", BinaryOp::Lt},  {">", BinaryOp::Gt}};
  for (const auto& [sym, op] : kOps) {
    SourceSpan span = ts.peek().span;
    if (ts.accept_symbol(sym)) return make_binary(op, lhs, parse_additive(ts), span);
  }
  return lhs;
}

ExprPtr parse_and(TokenStream& ts) {
  ExprPtr lhs = parse_cmp(ts);
  for (;;) {
    SourceSpan span = ts.peek().span;
    if (!ts.accept_symbol("&")) return lhs;
    lhs = make_binary(BinaryOp::And, lhs, parse_cmp(ts), span);
  }
}

ExprPtr parse_or(TokenStream& ts) {
  ExprPtr lhs = parse_and(ts);
  for (;;) {
    SourceSpan span = ts.peek().span;
    if (!ts.accept_symbol("|")) return lhs;
    lhs = make_binary(BinaryOp::Or, lhs, parse_and(ts), span);
  }
}

ExprPtr parse_implies(TokenStream& ts) {
  ExprPtr lhs = parse_or(ts);
  SourceSpan span = ts.peek().span;
  if (ts.accept_symbol("->")) return make_binary(BinaryOp::Implies, lhs, parse_implies(ts), span);
  return lhs;
}

ExprPtr parse_iff(TokenStream& ts) {
  ExprPtr lhs = parse_implies(ts);
  for (;;) {
    SourceSpan span = ts.peek().span;
    if (!ts.accept_symbol("<->")) return lhs;
    lhs = make_binary(BinaryOp::Iff, lhs, parse_implies(ts), span);
  }
}

bool section_start(const TokenStream& ts) {
  return ts.is_word("VAR") || ts.is_word("DEFINE") || ts.is_word("ASSIGN") ||
         ts.is_word("MODULE") || ts.at_end();
}

void parse_var_section(TokenStream& ts, ModuleDecl& mod) {
  while (!section_start(ts)) {
    const Token& name_tok = ts.expect_identifier();
    std::string name = name_tok.text;
    SourceSpan span = name_tok.span;
    ts.expect_symbol(":");
    if (ts.accept_word("boolean")) {
      mod.vars.push_back({name, VarType{VarTypeKind::Boolean, {}, nullptr, nullptr}, span});
    } else if (ts.accept_symbol("{")) {
      VarType type;
      type.kind = VarTypeKind::Enum;
      type.symbols.push_back(ts.expect_identifier().text);
      while (ts.accept_symbol(",")) type.symbols.push_back(ts.expect_identifier().text);
      ts.expect_symbol("}");
      mod.vars.push_back({name, std::move(type), span});
    } else {
      ExprPtr first = parse_additive(ts);
      if (ts.accept_symbol("..")) {
        VarType type;
        type.kind = VarTypeKind::IntRange;
        type.lo = first;
        type.hi = parse_additive(ts);
        mod.vars.push_back({name, std::move(type), span});
      } else if (first->kind == ExprKind::Name && first->path.size() == 1) {
        InstanceDecl inst;
        inst.name = name;
        inst.module = first->path[0];
        inst.span = span;
        if (ts.accept_symbol("(")) {
          if (!ts.is_symbol(")")) {
            inst.args.push_back(parse_iff(ts));
            while (ts.accept_symbol(",")) inst.args.push_back(parse_iff(ts));
          }
          ts.expect_symbol(")");
        }
        mod.instances.push_back(std::move(inst));
      } else {
        ts.fail({"boolean", "{", "..", "module name"});
      }
    }
    ts.expect_symbol(";");
  }
}

void parse_define_section(TokenStream& ts, ModuleDecl& mod) {
  while (!section_start(ts)) {
    const Token& name_tok = ts.expect_identifier();
    DefineDecl d{name_tok.text, nullptr, name_tok.span};
    ts.expect_symbol(":=");
    d.value = parse_iff(ts);
    ts.expect_symbol(";");
    mod.defines.push_back(std::move(d));
  }
}

void parse_assign_section(TokenStream& ts, ModuleDecl& mod) {
  while (!section_start(ts)) {
    AssignRule rule;
    rule.span = ts.peek().span;
    if (ts.accept_word("init")) {
      rule.kind = AssignKind::Init;
    } else if (ts.accept_word("next")) {
      rule.kind = AssignKind::Next;
    } else {
      ts.fail({"init", "next", "VAR", "DEFINE", "ASSIGN", "MODULE"});
    }
    ts.expect_symbol("(");
    rule.target = ts.expect_identifier().text;
    ts.expect_symbol(")");
    ts.expect_symbol(":=");
    rule.value = parse_iff(ts);
    ts.expect_symbol(";");
    mod.assigns.push_back(std::move(rule));
  }
}

ModuleDecl parse_module(TokenStream& ts) {
  ModuleDecl mod;
  mod.span = ts.expect_word("MODULE").span;
  const Token& name = ts.peek();
  if (name.kind != TokenKind::Identifier || (is_reserved_word(name.text))) ts.fail({"module name"});
  mod.name = ts.next().text;
  if (ts.accept_symbol("(")) {
    if (!ts.is_symbol(")")) {
      mod.params.push_back(ts.expect_identifier().text);
      while (ts.accept_symbol(",")) mod.params.push_back(ts.expect_identifier().text);
    }
    ts.expect_symbol(")");
  }
  for (;;) {
    if (ts.accept_word("VAR")) {
      parse_var_section(ts, mod);
    } else if (ts.accept_word("DEFINE")) {
      parse_define_section(ts, mod);
    } else if (ts.accept_word("ASSIGN")) {
      parse_assign_section(ts, mod);
    } else if (ts.is_word("MODULE") || ts.at_end()) {
      return mod;
    } else {
      ts.fail({"VAR", "DEFINE", "ASSIGN", "MODULE", "end of input"});
    }
  }
}

}  // namespace

ExprPtr parse_comparison(TokenStream& ts) { return parse_cmp(ts); }
ExprPtr parse_expr(TokenStream& ts) { return parse_iff(ts); }

ModelAst parse_model(std::string_view text, const ParseOptions& options) {
  TokenStream ts(tokenize(text));
  ModelAst ast;
  std::set<std::string> seen;
  if (ts.at_end()) ts.fail({"MODULE"});
  while (!ts.at_end()) {
    SourceSpan span = ts.peek().span;
    ModuleDecl mod = parse_module(ts);
    if (!seen.insert(mod.name).second && !options.allow_duplicate_modules)
      throw ParseError(span, "duplicate module name '" + mod.name + "'");
    ast.modules.push_back(std::move(mod));
  }
  return ast;
}

ExprPtr parse_expression(std::string_view text) {
  TokenStream ts(tokenize(text));
  ExprPtr e = parse_iff(ts);
  if (!ts.at_end()) ts.fail({"end of input"});
  return e;
}

}  // namespace vcsmc::model
