#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "support/bundle.hpp"
#include "support/files.hpp"
#include "vcsmc/driver/batch.hpp"
#include "vcsmc/sem/elaborate.hpp"
#include "vcsmc/sem/trace.hpp"

using namespace vcsmc;
using driver::InputError;
using driver::PlanRange;
using vcsmc::testing::axis_of;
namespace vt = vcsmc::testing;
using check::VerdictKind;

namespace {

std::string catalog_text(int n, int composites = 0) {
  std::string s = "index,id,variable,kind\n";
  for (int i = 1; i <= n + composites; ++i)
    s += std::to_string(i) + ",A" + std::to_string(i) + ",F" + std::to_string(i) + "," +
         (i > n ? "composite" : "ecu") + "\n";
  return s;
}

std::string matrix_text(int n, const std::string& cell = "M") {
  std::string s;
  for (int c = 1; c <= n; ++c) s += ",A" + std::to_string(c);
  s += "\n";
  for (int r = 1; r <= n; ++r) {
    s += "A" + std::to_string(r);
    for (int c = 1; c <= n; ++c) s += "," + cell;
    s += "\n";
  }
  return s;
}

struct Synthetic {
  driver::FailureCatalog cat;
  driver::TargetModeMatrix mx;
  explicit Synthetic(int n)
      : cat(driver::parse_failure_catalog(catalog_text(n))), mx(driver::parse_target_matrix(matrix_text(n), cat, {})) {}
};

const vcs::VcsBundle& desk() {
  static const vcs::VcsBundle b = vcs::generate_vcs(vcs::VcsConfig::desk());
  return b;
}

const driver::BatchInputs& desk_inputs() {
  static const driver::BatchInputs in = vcsmc::testing::bundle_inputs(desk());
  return in;
}

}  // namespace

TEST(FailureCatalog, ParsesAndSeparatesComposites) {
  auto cat = driver::parse_failure_catalog(catalog_text(5, 2));
  EXPECT_EQ(cat.entries.size(), 7u);
  EXPECT_EQ(cat.axis_count(), 5u);
  EXPECT_EQ(cat.axis(3).variable, "F3");
  EXPECT_THROW(cat.axis(6), std::out_of_range);
}

TEST(FailureCatalog, Errors) {
  try {
    driver::parse_failure_catalog("");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("empty catalog"), std::string::npos);
  }
  EXPECT_THROW(driver::parse_failure_catalog("index,id,variable,kind\n"), InputError);
  EXPECT_THROW(driver::parse_failure_catalog("idx,id,var,kind\n1,a,b,ecu\n"), InputError);
  EXPECT_THROW(driver::parse_failure_catalog("index,id,variable,kind\n2,a,b,ecu\n"), InputError);
  EXPECT_THROW(driver::parse_failure_catalog("index,id,variable,kind\n1,a,b,wheel\n"), InputError);
  EXPECT_THROW(driver::parse_failure_catalog("index,id,variable,kind\n1,a,b,ecu\n2,a,c,ecu\n"), InputError);
  try {
    driver::parse_failure_catalog("index,id,variable,kind\n1,a,b,ecu\n2,c,d\n", "f.csv");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("f.csv:3:", 0), 0u) << e.what();
  }
}

TEST(FailureCatalog, DeskBundleAxes) {
  auto cat = driver::parse_failure_catalog(desk().failures);
  // 4 ECUs, 2 supplies, 1 bus, 4 ring links; 3 composites on top.
  EXPECT_EQ(cat.axis_count(), 4u + 2u + 1u + 4u);
  EXPECT_EQ(cat.entries.size(), 14u);
}

TEST(TargetMatrix, DimensionAndModes) {
  auto cat = driver::parse_failure_catalog(catalog_text(6));
  auto m = driver::parse_target_matrix(matrix_text(6, "Normal"), cat, {"Normal"});
  EXPECT_EQ(m.n, 6u);
  EXPECT_EQ(m.at(6, 6), "Normal");
  std::string five_rows = matrix_text(6);
  five_rows.erase(five_rows.rfind("A6"));
  EXPECT_THROW(driver::parse_target_matrix(five_rows, cat, {}), InputError);
  EXPECT_THROW(driver::parse_target_matrix(matrix_text(5), cat, {}), InputError);
  EXPECT_THROW(driver::parse_target_matrix(matrix_text(6, "Warp"), cat, {"Normal"}), InputError);
}

TEST(TargetMatrix, FatalCellAccepted) {
  auto cat = driver::parse_failure_catalog(catalog_text(2));
  auto m = driver::parse_target_matrix(",A1,A2\nA1,M,FATAL\nA2,FATAL,M\n", cat, {"M"});
  EXPECT_TRUE(m.fatal(1, 2));
  EXPECT_FALSE(m.fatal(2, 2));
}

TEST(SpecCatalog, PlaceholderConsistency) {
  auto ts = sem::load_model("MODULE main VAR ModeA_active : boolean; ModeB_active : boolean;");
  auto lesson = driver::parse_spec_catalog("[lesson]\napplicability = all\nformula = G !(O ModeA_active & O ModeB_active)\n",
                                           &ts, nullptr, {});
  ASSERT_EQ(lesson.specs.size(), 1u);
  EXPECT_FALSE(lesson.specs[0].unbounded_liveness);
  EXPECT_THROW(driver::parse_spec_catalog("[s]\napplicability = single\nformula = G !{{FAIL_B}}\n", nullptr, nullptr, {}),
               InputError);
  EXPECT_THROW(driver::parse_spec_catalog("[s]\napplicability = all\nformula = G !{{FAIL_A}}\n", nullptr, nullptr, {}),
               InputError);
  EXPECT_THROW(driver::parse_spec_catalog("[s]\napplicability = some\nformula = G TRUE\n", nullptr, nullptr, {}),
               InputError);
  EXPECT_THROW(driver::parse_spec_catalog("[s]\nformula = G TRUE\n", nullptr, nullptr, {}), InputError);
  EXPECT_THROW(driver::parse_spec_catalog("[s]\napplicability = all\nformula = G undefined_name\n", &ts, nullptr, {}),
               InputError);
}

TEST(SpecCatalog, UnboundedLivenessFlagged) {
  auto ts = sem::load_model("MODULE main VAR a : boolean;");
  auto c = driver::parse_spec_catalog("[live]\napplicability = all\nformula = G F a\n\n[ok]\napplicability = all\n"
                                      "formula = G F[0,3] a\n",
                                      &ts, nullptr, {});
  EXPECT_TRUE(c.specs[0].unbounded_liveness);
  EXPECT_FALSE(c.specs[1].unbounded_liveness);
  EXPECT_EQ(c.warnings.size(), 1u);
}

TEST(SpecCatalog, DeskSpecsCoverAllClasses) {
  const auto& specs = desk_inputs().specs.specs;
  EXPECT_GE(specs.size(), 10u);
  std::set<driver::Applicability> classes;
  for (const auto& s : specs) classes.insert(s.applicability);
  EXPECT_EQ(classes.size(), 4u);
  EXPECT_TRUE(desk_inputs().specs.warnings.empty());
}

TEST(Substitute, Placeholders) {
  EXPECT_EQ(driver::substitute("G ({{FAIL_A}} -> F[0,5] Mode = {{TARGET_MODE}})", {"FallbackA", "F_ECU1", ""}),
            "G (F_ECU1 -> F[0,5] Mode = FallbackA)");
  EXPECT_THROW(driver::substitute("{{OTHER}}", {}), InputError);
}

TEST(Plan, Cardinality) {
  Synthetic s(42);
  EXPECT_EQ(driver::plan_batch(s.cat, s.mx, PlanRange::full()).tasks.size(), 1806u);
  EXPECT_EQ(driver::plan_batch(s.cat, s.mx, PlanRange::cells(1, 1, 2, 2)).tasks.size(), 4u);
  EXPECT_EQ(driver::plan_batch(s.cat, s.mx, PlanRange::singles()).tasks.size(), 42u);
  EXPECT_EQ(driver::plan_batch(s.cat, s.mx, PlanRange::cells(2, 3, 5, 7)).tasks.size(), 4u * 5u);
  auto one = driver::plan_batch(s.cat, s.mx, PlanRange::cells(3, 5, 3, 5));
  ASSERT_EQ(one.tasks.size(), 1u);
  EXPECT_EQ(one.tasks[0].axes, (std::vector<int>{3, 5}));
}

TEST(Plan, DiagonalIsSingleAndOrderIsRowCol) {
  Synthetic s(3);
  auto p = driver::plan_batch(s.cat, s.mx, PlanRange::full());
  ASSERT_EQ(p.tasks.size(), 12u);
  for (std::size_t i = 1; i < p.tasks.size(); ++i) {
    const auto &a = p.tasks[i - 1], &b = p.tasks[i];
    EXPECT_TRUE(a.row < b.row || (a.row == b.row && a.col < b.col));
  }
  EXPECT_EQ(p.tasks[0].col, 0);
  EXPECT_FALSE(p.tasks[0].is_pair());
  EXPECT_EQ(p.tasks[1].row, 1);
  EXPECT_EQ(p.tasks[1].col, 1);
  EXPECT_FALSE(p.tasks[1].is_pair());
  EXPECT_EQ(p.tasks[2].axes, (std::vector<int>{1, 2}));
  auto r = driver::plan_batch(s.cat, s.mx, PlanRange::cells(2, 1, 2, 1));
  EXPECT_EQ(r.tasks[0].axes, (std::vector<int>{2, 1}));  // reversed pair is its own task
}

TEST(Plan, RangeErrors) {
  Synthetic s(4);
  EXPECT_THROW(driver::plan_batch(s.cat, s.mx, PlanRange::cells(0, 1, 2, 2)), InputError);
  EXPECT_THROW(driver::plan_batch(s.cat, s.mx, PlanRange::cells(1, 1, 5, 2)), InputError);
  EXPECT_THROW(driver::plan_batch(s.cat, s.mx, PlanRange::cells(2, 2, 1, 1)), InputError);
}

TEST(Instantiate, RequiresMarkersAndValidWindow) {
  const auto& in = desk_inputs();
  EXPECT_THROW(driver::instantiate_model("MODULE main VAR a : boolean;", in.catalog, {1}, {}), InputError);
  EXPECT_THROW(driver::instantiate_model(in.template_text, in.catalog, {1}, {1, 5}), InputError);
  EXPECT_THROW(driver::instantiate_model(in.template_text, in.catalog, {1}, {20, 10}), InputError);
}

TEST(Instantiate, InstancesElaborate) {
  const auto& in = desk_inputs();
  for (int a = 1; a <= static_cast<int>(in.catalog.axis_count()); ++a) {
    EXPECT_NO_THROW(vcsmc::testing::instance(in, {a})) << a;
    EXPECT_NO_THROW(vcsmc::testing::instance(in, {a, a % 11 + 1})) << a;
  }
}

TEST(Instantiate, SingleFailureRespectsWindow) {
  const auto& in = desk_inputs();
  auto ts = vcsmc::testing::instance(in, {axis_of(in.catalog, "F_ECU3")});
  EXPECT_EQ(vt::check(ts, "G[0,14] !F_ECU3", 70).kind, VerdictKind::NoCounterexample);
  auto first = vt::check(ts, "G !F_ECU3", 70);
  ASSERT_EQ(first.kind, VerdictKind::Counterexample);
  EXPECT_EQ(first.violation_step, 15);
  // The latest start is the window end.
  EXPECT_EQ(vt::check(ts, "!F[0,40] F_ECU3", 70).kind, VerdictKind::Counterexample);
}

TEST(Instantiate, AuxiliaryAssertionsHoldOnPairs) {
  const auto& in = desk_inputs();
  std::vector<int> axes{axis_of(in.catalog, "F_BUS1"), axis_of(in.catalog, "F_ECU2")};
  auto ts = vcsmc::testing::instance(in, axes);
  for (const auto& [name, f] : driver::injection_assertions(in.catalog, axes, {}))
    EXPECT_EQ(vt::check(ts, f, 70).kind, VerdictKind::NoCounterexample) << name << ": " << f;
  // B alone never rises first, but it does rise.
  EXPECT_EQ(vt::check(ts, "G !F_ECU2", 70).kind, VerdictKind::Counterexample);
}

TEST(Instantiate, OverlapAndDisjointPathsBothExist) {
  const auto& in = desk_inputs();
  const int a = axis_of(in.catalog, "F_ECU1"), b = axis_of(in.catalog, "F_ECU2");
  auto ts = vcsmc::testing::instance(in, {a, b});
  auto go_a = *ts.find("inj_go_F_ECU1"), go_b = *ts.find("inj_go_F_ECU2");
  auto fa = *ts.find("F_ECU1"), fb = *ts.find("F_ECU2");

  // A from 16 to 17, B from 21 on: no overlap.
  auto disjoint = sem::simulate(ts, 30, sem::scripted([&](std::size_t step, int var) -> std::optional<sem::Value> {
    if (var == go_a) return step == 15;
    if (var == go_b) return step == 20;
    if (var == fa) return step <= 17;
    return std::nullopt;
  }));
  bool a_seen = false, b_seen = false, overlap = false;
  for (const auto& s : disjoint.states) {
    a_seen |= s[fa] != 0;
    b_seen |= s[fb] != 0;
    overlap |= s[fa] && s[fb];
  }
  EXPECT_TRUE(a_seen && b_seen);
  EXPECT_FALSE(overlap);

  // Both from 16 on.
  auto together = sem::simulate(ts, 30, sem::scripted([&](std::size_t step, int var) -> std::optional<sem::Value> {
    if (var == go_a || var == go_b) return step == 15;
    return std::nullopt;
  }));
  for (std::size_t t = 16; t <= 30; ++t) EXPECT_TRUE(together.states[t][fa] && together.states[t][fb]) << t;
}

TEST(Batch, EmptyPlanWritesEmptyReport) {
  const auto& in = desk_inputs();
  driver::BatchOptions opt;
  opt.baseline = false;
  auto report = driver::run_batch(in, {}, opt);
  auto dir = std::filesystem::temp_directory_path() / "vcsmc_empty_report";
  std::filesystem::remove_all(dir);
  driver::write_report(report, dir.string());
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.txt"));
  EXPECT_FALSE(std::filesystem::exists(dir / "cex"));
  EXPECT_NE(vcsmc::testing::read_file(dir / "summary.txt").find("tasks: 0"), std::string::npos);
  EXPECT_EQ(driver::exit_code(report), 0);
}

TEST(Batch, SinglesPassAndAreScheduleIndependent) {
  const auto& in = desk_inputs();
  auto plan = driver::plan_batch(in.catalog, in.matrix, PlanRange::singles());
  driver::BatchOptions one, four;
  four.workers = 4;
  auto r1 = driver::run_batch(in, plan, one);
  auto r4 = driver::run_batch(in, plan, four);
  EXPECT_EQ(r1.tasks.size(), 11u);
  EXPECT_GT(r1.counts()[driver::Outcome::Pass], 11u * 5u);
  for (auto o : {driver::Outcome::Violated, driver::Outcome::Error, driver::Outcome::Timeout})
    EXPECT_EQ(r1.counts()[o], 0u) << driver::to_string(o);
  EXPECT_EQ(vcsmc::testing::without_timing(driver::report_json(r1)),
            vcsmc::testing::without_timing(driver::report_json(r4)));
  EXPECT_EQ(driver::exit_code(r1), 0);
}

TEST(Batch, ModelErrorBecomesErrorRow) {
  driver::BatchInputs in;
  in.template_text =
      "MODULE main VAR t : 0..20; Mode : {M}; ASSIGN init(t) := 0; next(t) := t + 1;\n"
      "  -- @injection-begin\n  DEFINE F1 := FALSE;\n  -- @injection-end\n";
  in.catalog = driver::parse_failure_catalog(catalog_text(1));
  in.matrix = driver::parse_target_matrix(matrix_text(1), in.catalog, {});
  auto ts = sem::load_model(in.template_text);
  in.specs = driver::parse_spec_catalog("[inv]\napplicability = all\nformula = G TRUE\n", &ts, &in.catalog, {"M"});
  driver::BatchOptions opt;
  opt.bound = 30;
  opt.window = {2, 3};
  auto r = driver::run_batch(in, driver::plan_batch(in.catalog, in.matrix, PlanRange::singles()), opt);
  ASSERT_EQ(r.tasks.size(), 1u);
  ASSERT_EQ(r.tasks[0].specs.size(), 1u);
  EXPECT_EQ(r.tasks[0].specs[0].outcome, driver::Outcome::Error);
  EXPECT_EQ(r.tasks[0].specs[0].error_step, 21);
  EXPECT_EQ(driver::exit_code(r), 2);
}
