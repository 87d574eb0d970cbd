#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "support/files.hpp"
#include "support/random_model.hpp"
#include "vcsmc/model/parser.hpp"
#include "vcsmc/sem/elaborate.hpp"
#include "vcsmc/sem/trace.hpp"

using namespace vcsmc::sem;
using vcsmc::model::ElaborationError;
using vcsmc::model::parse_expression;
using vcsmc::model::parse_model;
using vcsmc::testing::fixture;

namespace {

Value var_value(const TransitionSystem& ts, const State& s, const std::string& name) {
  return s.at(static_cast<std::size_t>(*ts.find(name)));
}

Value symbol(const TransitionSystem& ts, const std::string& name) { return *ts.symbols->find(name); }

// State keyed by variable name, so systems with different variable orders compare.
using Named = std::map<std::string, std::string>;

Named named(const TransitionSystem& ts, const State& s) {
  Named out;
  for (std::size_t v = 0; v < ts.vars.size(); ++v) out[ts.vars[v].name] = ts.format_value(static_cast<int>(v), s[v]);
  return out;
}

}  // namespace

TEST(Elaborate, TwoBooleans) {
  auto ts = load_model("MODULE main VAR a : boolean; b : boolean;");
  EXPECT_EQ(ts.vars.size(), 2u);
  EXPECT_EQ(initial_states(ts).size(), 4u);
  EXPECT_EQ(successors(ts, initial_states(ts)[0]).states.size(), 4u);
}

TEST(Elaborate, QualifiedNamesAndGlobals) {
  auto ts = load_model(fixture("timer.fsm"));
  ASSERT_TRUE(ts.find("t.Timer"));
  const auto& dom = ts.vars[static_cast<std::size_t>(*ts.find("t.Timer"))].domain;
  EXPECT_EQ(dom.lo, 0);
  EXPECT_EQ(dom.hi, 5);
  ASSERT_TRUE(ts.defines.count("Global.T1_MAX"));
  EXPECT_EQ(ts.defines.at("Global.T1_MAX")->op, Op::Const);
  EXPECT_EQ(ts.defines.at("Global.T1_MAX")->value, 5);
}

TEST(Elaborate, ArityMismatchAndUnresolvableBound) {
  EXPECT_THROW(load_model("MODULE M(p) VAR x : boolean; MODULE main VAR a : M();"), ElaborationError);
  EXPECT_THROW(load_model("MODULE main VAR x : 0..3; t : 0..x;"), ElaborationError);
}

TEST(Elaborate, ParameterAliasReadsCallerScope) {
  auto ts = load_model(
      "MODULE Inv(src) VAR o : boolean; ASSIGN init(o) := FALSE; next(o) := !src;\n"
      "MODULE main VAR s : boolean; i : Inv(s & TRUE); ASSIGN init(s) := TRUE; next(s) := !s;");
  Trace t = simulate(ts, 3);
  for (std::size_t k = 1; k < t.states.size(); ++k)
    EXPECT_EQ(var_value(ts, t.states[k], "i.o"), var_value(ts, t.states[k - 1], "s") ? 0 : 1);
}

TEST(Elaborate, DottedReadOfAnotherInstanceVariable) {
  auto ts = load_model(
      "MODULE P VAR v : boolean; ASSIGN init(v) := TRUE; next(v) := !v;\n"
      "MODULE Q(peer) VAR w : boolean; ASSIGN init(w) := FALSE; next(w) := peer.v;\n"
      "MODULE main VAR p : P(); q : Q(p);");
  Trace t = simulate(ts, 2);
  EXPECT_EQ(var_value(ts, t.states[1], "q.w"), 1);
  EXPECT_EQ(var_value(ts, t.states[2], "q.w"), 0);
}

TEST(InitialStates, Counts) {
  EXPECT_EQ(initial_states(load_model("MODULE main VAR a : boolean; b : boolean; ASSIGN init(a) := TRUE; "
                                      "init(b) := FALSE;"))
                .size(),
            1u);
  EXPECT_EQ(initial_states(load_model("MODULE main VAR a : boolean; b : boolean; ASSIGN init(a) := TRUE;")).size(),
            2u);
  auto dep = load_model("MODULE main VAR a : boolean; b : boolean; ASSIGN init(b) := !a;");
  auto states = initial_states(dep);
  ASSERT_EQ(states.size(), 2u);
  for (const auto& s : states) EXPECT_NE(s[0], s[1]);
}

TEST(Successors, DeterministicAndChoice) {
  auto det = load_model("MODULE main VAR a : boolean; ASSIGN init(a) := TRUE; next(a) := !a;");
  EXPECT_EQ(successors(det, initial_states(det)[0]).states.size(), 1u);
  auto choice = load_model(
      "MODULE main VAR a : boolean; c : boolean; ASSIGN init(a) := TRUE; init(c) := TRUE; next(a) := a; "
      "next(c) := {TRUE, FALSE};");
  auto succ = successors(choice, initial_states(choice)[0]).states;
  ASSERT_EQ(succ.size(), 2u);
  EXPECT_EQ(succ[0][0], succ[1][0]);
  EXPECT_EQ(succ[0][1], 1);  // listed order
  EXPECT_EQ(succ[1][1], 0);
}

TEST(Successors, LexicographicOrderFirstVariableMostSignificant) {
  auto ts = load_model(
      "MODULE main VAR a : boolean; b : boolean; ASSIGN init(a) := TRUE; init(b) := TRUE; "
      "next(a) := {FALSE, TRUE}; next(b) := {FALSE, TRUE};");
  auto succ = successors(ts, initial_states(ts)[0]).states;
  std::vector<State> expect{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(succ, expect);
}

TEST(Successors, TimerIncrements) {
  auto ts = load_model(fixture("timer.fsm"));
  State s(ts.vars.size(), 0);
  s[static_cast<std::size_t>(*ts.find("count"))] = 1;
  auto succ = successors(ts, s).states;
  // reset and count are free; keep those with reset false and count as before.
  int timer = *ts.find("t.Timer");
  for (const auto& n : succ) EXPECT_EQ(n[static_cast<std::size_t>(timer)], 1);
  EXPECT_EQ(succ.size(), 4u);
}

TEST(Successors, OverflowPoisonsSuccessor) {
  auto ts = load_model("MODULE main VAR t : 0..2; ASSIGN init(t) := 2; next(t) := t + 1;");
  auto res = successors(ts, initial_states(ts)[0]);
  EXPECT_TRUE(res.states.empty());
  ASSERT_TRUE(res.fault);
  EXPECT_EQ(res.fault->value, 3);
  EXPECT_EQ(res.fault->rule, "t + 1");
  EXPECT_THROW(simulate(ts, 1), SimulationError);
  try {
    simulate(ts, 3);
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(Successors, SynchronyIndependentOfRuleOrder) {
  std::mt19937 rng(7);
  for (int i = 0; i < 60; ++i) {
    std::string src = vcsmc::testing::random_bool_model(rng);
    auto ast = parse_model(src);
    auto shuffled = ast;
    auto& m = shuffled.modules[0];
    std::shuffle(m.vars.begin(), m.vars.end(), rng);
    std::shuffle(m.assigns.begin(), m.assigns.end(), rng);
    auto a = elaborate(ast);
    auto b = elaborate(shuffled);
    std::set<Named> init_a, init_b;
    for (const auto& s : initial_states(a)) init_a.insert(named(a, s));
    for (const auto& s : initial_states(b)) init_b.insert(named(b, s));
    ASSERT_EQ(init_a, init_b) << src;
    for (const auto& s : initial_states(a)) {
      State t(b.vars.size());
      for (std::size_t v = 0; v < a.vars.size(); ++v) t[static_cast<std::size_t>(*b.find(a.vars[v].name))] = s[v];
      std::set<Named> sa, sb;
      for (const auto& n : successors(a, s).states) sa.insert(named(a, n));
      for (const auto& n : successors(b, t).states) sb.insert(named(b, n));
      ASSERT_EQ(sa, sb) << src;
    }
  }
}

TEST(Successors, DeterministicModelsHaveOneSuccessor) {
  std::mt19937 rng(11);
  vcsmc::testing::RandomModelOptions opts;
  opts.free_percent = 0;
  opts.choice_percent = 0;
  for (int i = 0; i < 40; ++i) {
    auto src = vcsmc::testing::random_bool_model(rng, opts);
    auto ts = load_model(src);
    for (const auto& s : initial_states(ts)) {
      State cur = s;
      for (int k = 0; k < 6; ++k) {
        auto succ = successors(ts, cur).states;
        ASSERT_EQ(succ.size(), 1u) << src;
        cur = succ[0];
      }
    }
  }
}

TEST(Simulate, ZeroStepsAndPolicies) {
  auto ts = load_model("MODULE main VAR a : boolean; ASSIGN init(a) := TRUE; next(a) := !a;");
  EXPECT_EQ(simulate(ts, 0).states.size(), 1u);
  auto t1 = simulate(ts, 8);
  auto t2 = simulate(ts, 8, seeded_random(99));
  EXPECT_EQ(t1.states, t2.states);
  EXPECT_EQ(t1.states.size(), 9u);
}

TEST(Simulate, StatesAreRelatedBySuccessors) {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto ts = load_model(vcsmc::testing::random_bool_model(rng));
    auto t = simulate(ts, 10, seeded_random(static_cast<std::uint64_t>(i)));
    EXPECT_TRUE(is_initial(ts, t.states[0]));
    for (std::size_t k = 1; k < t.states.size(); ++k) {
      auto succ = successors(ts, t.states[k - 1]).states;
      EXPECT_NE(std::find(succ.begin(), succ.end(), t.states[k]), succ.end());
      EXPECT_TRUE(is_successor(ts, t.states[k - 1], t.states[k]));
    }
  }
}

TEST(Simulate, SeededRandomIsReproducible) {
  auto ts = load_model("MODULE main VAR a : boolean; b : 0..9;");
  EXPECT_EQ(simulate(ts, 20, seeded_random(5)).states, simulate(ts, 20, seeded_random(5)).states);
}

TEST(Eval, SingleArmCase) {
  auto ts = load_model("MODULE main VAR x : boolean;");
  auto e = resolve_expression(ts, *parse_expression("case TRUE : x; esac"));
  EXPECT_EQ(eval_expr(e, {1}), 1);
  EXPECT_EQ(eval_expr(e, {0}), 0);
}

TEST(Eval, ListingOneDoubleFailureGivesPassive) {
  auto ts = load_model(fixture("listing1_main.fsm"));
  int fa = *ts.find("FailA"), fb = *ts.find("FailB");
  int ecu = *ts.find("ecu1.S_ECU1");
  for (const auto& s0 : initial_states(ts)) {
    State s = s0;
    s[static_cast<std::size_t>(fa)] = 1;
    s[static_cast<std::size_t>(fb)] = 1;
    for (const char* peer : {"Init", "Ready", "Active"}) {
      s[static_cast<std::size_t>(*ts.find("S_ECU2"))] = symbol(ts, peer);
      for (const auto& n : successors(ts, s).states)
        EXPECT_EQ(n[static_cast<std::size_t>(ecu)], symbol(ts, "Passive"));
    }
  }
}

TEST(Eval, FirstTrueGuardWins) {
  auto ts = load_model("MODULE main VAR m : {A, B, C}; p : boolean; q : boolean;");
  auto ab = resolve_expression(ts, *parse_expression("case p : A; q : B; TRUE : C; esac"));
  auto ba = resolve_expression(ts, *parse_expression("case q : B; p : A; TRUE : C; esac"));
  State both{symbol(ts, "A"), 1, 1};
  EXPECT_EQ(eval_expr(ab, both), symbol(ts, "A"));
  EXPECT_EQ(eval_expr(ba, both), symbol(ts, "B"));
  State only_p{symbol(ts, "A"), 1, 0};
  EXPECT_EQ(eval_expr(ab, only_p), eval_expr(ba, only_p));
}

TEST(Eval, ArithmeticAndComparisons) {
  auto ts = load_model("MODULE main VAR t : 0..9;");
  auto e = resolve_expression(ts, *parse_expression("t + 2 - 1 >= 5"));
  EXPECT_EQ(eval_expr(e, {3}), 0);
  EXPECT_EQ(eval_expr(e, {4}), 1);
  EXPECT_EQ(eval_expr(resolve_expression(ts, *parse_expression("-t + 10")), {4}), 6);
}

TEST(TraceIo, TextAndJsonRoundTrip) {
  auto ts = load_model(fixture("listing1_main.fsm"));
  auto t = simulate(ts, 5, seeded_random(1));
  std::string text = trace_to_text(ts, t);
  EXPECT_EQ(text.rfind("step 0\nFailA = ", 0), 0u) << text;
  EXPECT_EQ(trace_from_text(ts, text).states, t.states);
  std::string json = trace_to_json(ts, t);
  EXPECT_EQ(trace_from_json(ts, json).states, t.states);
  EXPECT_THROW(trace_from_text(ts, "step 0\nFailA = TRUE\n"), std::runtime_error);
}
