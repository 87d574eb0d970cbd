#include "oracle_suite.hpp"

#include "random_ltl.hpp"
#include "random_model.hpp"
#include "vcsmc/ltl/parser.hpp"
#include "vcsmc/sem/elaborate.hpp"

namespace vcsmc::testing {

RandomTask random_task(std::mt19937& rng, TaskFlavor flavor) {
  RandomTask t;
  RandomModelOptions mo;
  mo.free_percent = 10;
  mo.choice_percent = 20;
  t.model = random_bool_model(rng, mo);
  int nvars = 0;
  for (std::size_t p = t.model.find(" : boolean"); p != std::string::npos; p = t.model.find(" : boolean", p + 1))
    ++nvars;
  if (flavor == TaskFlavor::Future) {
    LtlGenOptions o;
    o.nvars = nvars;
    o.depth = 3;
    o.max_window = 4;
    t.formula = random_ltl(rng, o);
    t.bound = std::uniform_int_distribution<int>(0, 10)(rng);
  } else {
    t.formula = random_past_ltl(rng, nvars, 3);
    t.bound = std::uniform_int_distribution<int>(0, 8)(rng);
  }
  return t;
}

Comparison compare_with_oracle(std::uint32_t seed, int count, TaskFlavor flavor) {
  std::mt19937 rng(seed);
  Comparison c;
  while (c.compared < count) {
    RandomTask rt = random_task(rng, flavor);
    auto ts = sem::load_model(rt.model);
    check::CheckTask task;
    task.ts = &ts;
    task.formula = ltl::parse_ltl(rt.formula, ts);
    task.bound = rt.bound;
    check::Verdict oracle;
    try {
      oracle = check::brute_force_check(task, {100000});
    } catch (const check::CapExceeded&) {
      ++c.skipped;
      continue;
    }
    check::Verdict v = check::check_bounded(task);
    ++c.compared;
    bool same = v.kind == oracle.kind && v.violation_step == oracle.violation_step &&
                v.error_step == oracle.error_step && v.holds_on_all_paths == oracle.holds_on_all_paths;
    if (same) {
      ++c.agreed;
    } else if (c.first_mismatch.empty()) {
      c.first_mismatch = "k=" + std::to_string(rt.bound) + " formula: " + rt.formula + "\nchecker: " +
                         check::to_string(v.kind) + " step " + std::to_string(v.violation_step) + "\noracle: " +
                         check::to_string(oracle.kind) + " step " + std::to_string(oracle.violation_step) + "\n" +
                         rt.model;
    }
    if (v.kind == check::VerdictKind::Counterexample) {
      ++c.counterexamples;
      bool ok = static_cast<int>(v.trace.states.size()) == v.violation_step + 1;
      try {
        ok = ok && check::replay_counterexample(ts, v.trace, *task.formula) == ltl::PrefixVerdict::Violated;
      } catch (const check::InvalidTrace&) {
        ok = false;
      }
      if (!ok) ++c.replay_failures;
    }
  }
  return c;
}

}  // namespace vcsmc::testing
