#include <gtest/gtest.h>

#include "support/files.hpp"
#include "support/random_ast.hpp"
#include "vcsmc/model/parser.hpp"
#include "vcsmc/model/printer.hpp"
#include "vcsmc/model/validate.hpp"

using namespace vcsmc::model;
using vcsmc::testing::fixture;

namespace {

bool has_message(const std::vector<Diagnostic>& ds, const std::string& fragment) {
  for (const auto& d : ds)
    if (d.message.find(fragment) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Parse, ListingOneShape) {
  ModelAst ast = parse_model(fixture("listing1.fsm"));
  ASSERT_EQ(ast.modules.size(), 1u);
  const ModuleDecl& m = ast.modules[0];
  EXPECT_EQ(m.name, "M_ECU1");
  EXPECT_EQ(m.params, (std::vector<std::string>{"S_ECU2", "S_ECU3", "FailA", "FailB"}));
  ASSERT_EQ(m.vars.size(), 1u);
  EXPECT_EQ(m.vars[0].type.kind, VarTypeKind::Enum);
  EXPECT_EQ(m.vars[0].type.symbols, (std::vector<std::string>{"Init", "Ready", "Active", "Passive"}));
  ASSERT_EQ(m.assigns.size(), 2u);
  EXPECT_EQ(m.assigns[0].target, "S_ECU1");
  EXPECT_EQ(m.assigns[1].value->kind, ExprKind::Case);
  EXPECT_EQ(m.assigns[1].value->arms.size(), 4u);
}

TEST(Parse, MinimalModel) {
  ModelAst ast = parse_model("MODULE main VAR x : boolean;");
  ASSERT_EQ(ast.modules.size(), 1u);
  EXPECT_EQ(ast.modules[0].vars.size(), 1u);
  EXPECT_TRUE(ast.modules[0].assigns.empty());
  ASSERT_NE(ast.main(), nullptr);
}

TEST(Parse, TimerPatternCase) {
  ModelAst ast = parse_model(fixture("timer.fsm"));
  const ModuleDecl* timer = ast.find("M_TIMER");
  ASSERT_NE(timer, nullptr);
  const Expr* next = nullptr;
  for (const auto& a : timer->assigns)
    if (a.kind == AssignKind::Next) next = a.value.get();
  ASSERT_NE(next, nullptr);
  ASSERT_EQ(next->kind, ExprKind::Case);
  ASSERT_EQ(next->arms.size(), 4u);
  EXPECT_EQ(next->arms.back().guard->kind, ExprKind::BoolLit);
  EXPECT_TRUE(next->arms.back().guard->bool_value);
  EXPECT_EQ(timer->vars[0].type.hi->dotted_name(), "Global.T1_MAX");
}

TEST(Parse, SyntaxErrorCarriesPositionAndExpectations) {
  try {
    parse_model("MODULE main\nVAR\n  x : boolean\n  y : boolean;");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 4);
    EXPECT_EQ(e.span().column, 3);
    EXPECT_NE(std::find(e.expected().begin(), e.expected().end(), ";"), e.expected().end());
  }
}

TEST(Parse, DuplicateModuleRejected) {
  EXPECT_THROW(parse_model("MODULE A VAR x : boolean; MODULE A VAR y : boolean; MODULE main"), ParseError);
}

TEST(Parse, CommentsIgnored) {
  ModelAst ast = parse_model("-- header\nMODULE main -- trailing\nVAR x : boolean; -- done\n");
  EXPECT_EQ(ast.modules[0].vars.size(), 1u);
}

TEST(Parse, KeywordsAreReserved) {
  EXPECT_THROW(parse_model("MODULE main VAR next : boolean;"), ParseError);
  EXPECT_THROW(parse_model("MODULE main VAR TRUE : boolean;"), ParseError);
}

TEST(Parse, IdentifiersAreCaseSensitive) {
  ModelAst ast = parse_model("MODULE main VAR x : boolean; X : boolean;");
  EXPECT_EQ(ast.modules[0].vars.size(), 2u);
  EXPECT_TRUE(validate_model(ast).empty());
}

TEST(Parse, PositionsOnNodes) {
  ModelAst ast = parse_model("MODULE main\nVAR\n  x : boolean;\nASSIGN\n  next(x) := !x;\n");
  const auto& rule = ast.modules[0].assigns[0];
  EXPECT_EQ(rule.span.line, 5);
  EXPECT_EQ(rule.value->span.line, 5);
  EXPECT_GT(rule.value->span.column, 1);
}

TEST(Validate, ListingOneWithMainIsClean) {
  auto ds = validate_model(parse_model(fixture("listing1_main.fsm")));
  EXPECT_TRUE(ds.empty()) << (ds.empty() ? "" : format(ds[0]));
  ds = validate_model(parse_model(fixture("timer.fsm")));
  EXPECT_TRUE(ds.empty()) << (ds.empty() ? "" : format(ds[0]));
}

TEST(Validate, UnresolvedIdentifier) {
  auto ast = parse_model(
      "MODULE main VAR S_ECU1 : {Init, Ready}; ASSIGN next(S_ECU1) := case S_ECU9 = Init : Ready; TRUE : S_ECU1; esac;");
  auto ds = validate_model(ast);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].severity, Severity::Error);
  EXPECT_NE(ds[0].message.find("unresolved identifier"), std::string::npos);
  EXPECT_EQ(ds[0].span.line, 1);
}

TEST(Validate, DuplicateMain) {
  ParseOptions lenient;
  lenient.allow_duplicate_modules = true;
  auto ast = parse_model("MODULE main VAR x : boolean; MODULE main VAR y : boolean;", lenient);
  auto ds = validate_model(ast);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_NE(ds[0].message.find("duplicate main"), std::string::npos);
}

TEST(Validate, MissingMainAndParameters) {
  EXPECT_TRUE(has_message(validate_model(parse_model(fixture("listing1.fsm"))), "missing module 'main'"));
  EXPECT_TRUE(has_message(validate_model(parse_model("MODULE main(a) VAR x : boolean;")), "parameters"));
}

TEST(Validate, CaseNeedsTrueDefault) {
  auto ds = validate_model(parse_model(
      "MODULE main VAR x : boolean; ASSIGN next(x) := case x : FALSE; !x : TRUE; esac;"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_NE(ds[0].message.find("TRUE"), std::string::npos);
}

TEST(Validate, SetLiteralPlacement) {
  EXPECT_TRUE(validate_model(parse_model(
                  "MODULE main VAR x : boolean; ASSIGN init(x) := {TRUE, FALSE}; "
                  "next(x) := case x : {TRUE, FALSE}; TRUE : FALSE; esac;"))
                  .empty());
  auto ds = validate_model(parse_model("MODULE main VAR x : boolean; ASSIGN next(x) := !{TRUE, FALSE};"));
  EXPECT_TRUE(has_message(ds, "set literal"));
  ds = validate_model(parse_model("MODULE main VAR x : boolean; DEFINE d := {TRUE, FALSE};"));
  EXPECT_TRUE(has_message(ds, "set literal"));
}

TEST(Validate, RuleDuplicatesAndTargets) {
  auto ds = validate_model(parse_model("MODULE main VAR x : boolean; ASSIGN init(x) := TRUE; init(x) := FALSE;"));
  EXPECT_TRUE(has_message(ds, "duplicate init"));
  ds = validate_model(parse_model("MODULE main VAR x : boolean; ASSIGN next(y) := TRUE;"));
  EXPECT_TRUE(has_message(ds, "undeclared"));
}

TEST(Validate, InstantiationProblems) {
  EXPECT_TRUE(has_message(validate_model(parse_model("MODULE main VAR a : Nope();")), "unknown module"));
  EXPECT_TRUE(has_message(validate_model(parse_model("MODULE M(p) VAR x : boolean; MODULE main VAR a : M();")),
                          "expects 1 argument"));
  EXPECT_TRUE(has_message(
      validate_model(parse_model("MODULE A VAR b : B(); MODULE B VAR a : A(); MODULE main VAR a : A();")),
      "recursive instantiation"));
}

TEST(Validate, DefineCycle) {
  auto ds = validate_model(parse_model("MODULE main VAR x : boolean; DEFINE a := b & x; b := !a;"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_NE(ds[0].message.find("combinational cycle"), std::string::npos);
}

TEST(Validate, EnumNeedsTwoSymbols) {
  EXPECT_TRUE(has_message(validate_model(parse_model("MODULE main VAR m : {A};")), "at least two"));
  EXPECT_TRUE(has_message(validate_model(parse_model("MODULE main VAR m : {A, A};")), "repeated symbol"));
}

TEST(Validate, TypeMismatches) {
  EXPECT_TRUE(has_message(validate_model(parse_model("MODULE main VAR x : boolean; ASSIGN init(x) := 3;")),
                          "type mismatch"));
  EXPECT_FALSE(validate_model(parse_model("MODULE main VAR m : {A, B}; n : {C, D}; ASSIGN init(m) := C;")).empty());
  EXPECT_FALSE(validate_model(parse_model("MODULE main VAR x : boolean; ASSIGN init(x) := x + 1 = TRUE;")).empty());
  EXPECT_FALSE(validate_model(parse_model("MODULE main VAR t : 0..3; ASSIGN init(t) := 7;")).empty());
}

TEST(Validate, RangeBoundMustBeConstant) {
  auto ds = validate_model(parse_model("MODULE main VAR x : 0..3; t : 0..x;"));
  EXPECT_TRUE(has_message(ds, "range bound"));
}

TEST(Validate, EveryDiagnosticHasASpan) {
  const char* bad[] = {
      "MODULE main VAR x : boolean; ASSIGN next(x) := y;",
      "MODULE main VAR x : boolean; ASSIGN next(x) := case x : FALSE; esac;",
      "MODULE main VAR x : boolean; ASSIGN init(x) := 3;",
      "MODULE main VAR a : Nope();",
  };
  for (const char* src : bad) {
    auto ds = validate_model(parse_model(src));
    ASSERT_FALSE(ds.empty()) << src;
    for (const auto& d : ds) EXPECT_GT(d.span.line, 0) << src << ": " << d.message;
  }
}

TEST(Print, MinimalRoundTrip) {
  ModelAst ast = parse_model("MODULE main VAR x : boolean;");
  std::string text = pretty_print(ast);
  EXPECT_TRUE(structurally_equal(parse_model(text), ast)) << text;
  EXPECT_EQ(pretty_print(parse_model(text)), text);
}

TEST(Print, FixturesRoundTrip) {
  for (const char* name : {"listing1.fsm", "listing1_main.fsm", "timer.fsm"}) {
    ModelAst ast = parse_model(fixture(name));
    std::string text = pretty_print(ast);
    EXPECT_TRUE(structurally_equal(parse_model(text), ast)) << name << "\n" << text;
  }
}

TEST(Print, RandomAstsRoundTrip) {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 100; ++i) {
    ModelAst ast = vcsmc::testing::random_ast(rng);
    std::string text = pretty_print(ast);
    ModelAst back;
    ASSERT_NO_THROW(back = parse_model(text)) << text;
    ASSERT_TRUE(structurally_equal(back, ast)) << "case " << i << "\n" << text;
  }
}

TEST(Print, PrecedenceNeedsParentheses) {
  auto e = make_binary(BinaryOp::And, make_binary(BinaryOp::Or, make_name({"a"}), make_name({"b"})), make_name({"c"}));
  EXPECT_EQ(pretty_print(*e), "(a | b) & c");
  auto cmp = make_binary(BinaryOp::Eq, make_binary(BinaryOp::Eq, make_name({"a"}), make_name({"b"})), make_name({"c"}));
  auto back = parse_expression(pretty_print(*cmp));
  EXPECT_TRUE(structurally_equal(*back, *cmp));
  auto neg = make_unary(UnaryOp::Neg, make_unary(UnaryOp::Neg, make_int(1)));
  EXPECT_TRUE(structurally_equal(*parse_expression(pretty_print(*neg)), *neg));
}
