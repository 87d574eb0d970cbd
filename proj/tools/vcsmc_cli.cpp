#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

#include "vcsmc/check/checker.hpp"
#include "vcsmc/driver/batch.hpp"
#include "vcsmc/ltl/parser.hpp"
#include "vcsmc/ltl/transform.hpp"
#include "vcsmc/model/lexer.hpp"
#include "vcsmc/model/parser.hpp"
#include "vcsmc/model/validate.hpp"
#include "vcsmc/sem/elaborate.hpp"
#include "vcsmc/sem/trace.hpp"
#include "vcsmc/vcs/generator.hpp"

using namespace vcsmc;

namespace {

constexpr int kPass = 0;
constexpr int kViolated = 1;
constexpr int kError = 2;

struct BatchArgs {
  std::string tmpl, failures, matrix, specs, out = "batch_out";
  std::vector<int> range;
  bool singles = false, full = false, no_baseline = false, quiet = false;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  int bound = 70;
  double timeout = 900;
  int window_start = 15, window_end = 40;
};

int run_batch(const BatchArgs& a) {
  auto in = driver::load_batch_inputs(a.tmpl, a.failures, a.matrix, a.specs);
  for (const auto& w : in.specs.warnings) std::cerr << "warning: " << w << '\n';
  driver::PlanRange range = driver::PlanRange::full();
  if (a.singles) range = driver::PlanRange::singles();
  if (!a.range.empty()) range = driver::PlanRange::cells(a.range[0], a.range[1], a.range[2], a.range[3]);
  auto plan = driver::plan_batch(in.catalog, in.matrix, range);

  driver::BatchOptions opt;
  opt.bound = a.bound;
  opt.window = {a.window_start, a.window_end};
  opt.workers = a.workers;
  opt.baseline = !a.no_baseline;
  if (a.timeout > 0) opt.timeout = std::chrono::milliseconds(static_cast<long long>(a.timeout * 1000));
  if (!a.quiet)
    opt.progress = [last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
      std::size_t pct = total ? done * 100 / total : 100;
      if (pct != last || done == total) std::cerr << "\r" << done << "/" << total << " checks" << std::flush;
      last = pct;
      if (done == total) std::cerr << '\n';
    };
  std::cerr << plan.tasks.size() << " tasks, " << a.workers << " worker(s), bound " << a.bound << '\n';
  auto report = driver::run_batch(in, plan, opt);
  driver::write_report(report, a.out);
  for (const auto& [o, n] : report.counts()) std::cout << driver::to_string(o) << ' ' << n << '\n';
  std::cout << "report: " << a.out << "/report.json\n";
  return driver::exit_code(report);
}

sem::TransitionSystem load(const std::string& path) { return sem::load_model(driver::read_text_file(path)); }

struct CheckArgs {
  std::string model, prop, specs, trace_out;
  int bound = 70;
  double timeout = 0;
  bool json = false;
};

int run_check(const CheckArgs& a) {
  auto ts = load(a.model);
  std::string formula = a.prop;
  if (!a.specs.empty()) {
    auto cat = driver::load_spec_catalog(a.specs, nullptr, nullptr, {});
    auto it = std::find_if(cat.specs.begin(), cat.specs.end(), [&](const auto& s) { return s.name == a.prop; });
    if (it == cat.specs.end()) throw std::runtime_error("no spec named '" + a.prop + "' in " + a.specs);
    formula = it->formula;
    if (formula.find("{{") != std::string::npos)
      throw std::runtime_error("spec '" + a.prop + "' has placeholders; it is meant for the batch driver");
  }
  check::CheckTask task;
  task.ts = &ts;
  task.formula = ltl::parse_ltl(formula, ts);
  task.bound = a.bound;
  if (a.timeout > 0) task.timeout = std::chrono::milliseconds(static_cast<long long>(a.timeout * 1000));
  if (ltl::has_unbounded_liveness(*task.formula))
    std::cerr << "warning: unbounded liveness can never be confirmed on a bounded prefix\n";
  auto v = check::check_bounded(task);

  std::cout << check::to_string(v.kind);
  switch (v.kind) {
    case check::VerdictKind::NoCounterexample: std::cout << " (bound " << v.bound << ")\n"; return kPass;
    case check::VerdictKind::Counterexample: {
      std::cout << " at step " << v.violation_step << '\n';
      std::string text = a.json ? sem::trace_to_json(ts, v.trace) : sem::trace_to_text(ts, v.trace);
      if (a.trace_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(a.trace_out) << text;
        std::cout << "trace: " << a.trace_out << '\n';
      }
      return kViolated;
    }
    case check::VerdictKind::ModelError:
      std::cout << " at step " << v.error_step << ": " << v.error << '\n';
      return kError;
    case check::VerdictKind::Timeout: std::cout << " after " << v.elapsed_ms << " ms\n"; return kError;
  }
  return kError;
}

int run_simulate(const std::string& model, std::size_t steps, std::optional<std::uint64_t> seed, bool json) {
  auto ts = load(model);
  auto tr = sem::simulate(ts, steps, seed ? sem::seeded_random(*seed) : sem::first_choice());
  std::cout << (json ? sem::trace_to_json(ts, tr) : sem::trace_to_text(ts, tr));
  return kPass;
}

int run_validate(const std::string& model) {
  auto ast = model::parse_model(driver::read_text_file(model));
  auto diags = model::validate_model(ast);
  for (const auto& d : diags) std::cerr << model << ':' << model::format(d) << '\n';
  if (diags.empty()) std::cout << "ok\n";
  return diags.empty() ? kPass : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded model checker and fault-combination batch driver"};
  app.require_subcommand(1);

  BatchArgs ba;
  auto* batch = app.add_subcommand("batch", "check every failure combination of a matrix range");
  batch->add_option("--template", ba.tmpl, "model template with an injection region")->required();
  batch->add_option("--failures", ba.failures, "failure catalog (csv)")->required();
  batch->add_option("--matrix", ba.matrix, "target-mode matrix (csv)")->required();
  batch->add_option("--specs", ba.specs, "specification catalog")->required();
  auto* range = batch->add_option("--range", ba.range, "r1 c1 r2 c2, 1-based inclusive")->expected(4);
  auto* singles = batch->add_flag("--singles", ba.singles, "single failures only");
  auto* full = batch->add_flag("--full", ba.full, "all singles and all ordered pairs (default)");
  range->excludes(singles)->excludes(full);
  singles->excludes(full);
  batch->add_option("--workers", ba.workers, "parallel checks")->check(CLI::PositiveNumber);
  batch->add_option("--bound", ba.bound, "BMC bound k")->capture_default_str()->check(CLI::NonNegativeNumber);
  batch->add_option("--timeout", ba.timeout, "seconds per check, 0 = none")->capture_default_str();
  batch->add_option("--window-start", ba.window_start, "earliest failure onset")->capture_default_str();
  batch->add_option("--window-end", ba.window_end, "latest failure onset")->capture_default_str();
  batch->add_option("--out", ba.out, "report directory")->capture_default_str();
  batch->add_flag("--no-baseline", ba.no_baseline, "skip the failure-free instance");
  batch->add_flag("--quiet", ba.quiet, "no progress output");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "bounded check of one property");
  check->add_option("MODEL", ca.model)->required();
  check->add_option("--prop", ca.prop, "spec name (with --specs) or LTL text")->required();
  check->add_option("--specs", ca.specs, "catalog to look the name up in");
  check->add_option("--bound", ca.bound, "BMC bound k")->capture_default_str()->check(CLI::NonNegativeNumber);
  check->add_option("--timeout", ca.timeout, "seconds, 0 = none");
  check->add_option("--trace-out", ca.trace_out, "write the counterexample here");
  check->add_flag("--json", ca.json, "JSON trace format");

  std::string sim_model;
  std::size_t steps = 0;
  std::optional<std::uint64_t> seed;
  bool sim_json = false;
  auto* simulate = app.add_subcommand("simulate", "print one execution");
  simulate->add_option("MODEL", sim_model)->required();
  simulate->add_option("--steps", steps)->required();
  simulate->add_option("--seed", seed, "random choices (default: first option everywhere)");
  simulate->add_flag("--json", sim_json, "JSON trace format");

  vcs::VcsConfig vc = vcs::VcsConfig::desk();
  std::optional<int> ecus, buses;
  std::string mutant = "none", gen_out;
  bool desk = false, full_cfg = false;
  auto* gen = app.add_subcommand("gen-vcs", "write the vehicle control system bundle");
  gen->add_option("--ecus", ecus);
  gen->add_option("--buses", buses);
  auto* desk_flag = gen->add_flag("--desk", desk, "4 ECUs, 1 bus (default)");
  gen->add_flag("--full", full_cfg, "7 ECUs, 3 buses, 42 failure axes")->excludes(desk_flag);
  gen->add_option("--mutant", mutant, "none | swapped-fallback-priority")->capture_default_str();
  gen->add_option("--out", gen_out)->required();

  std::string val_model;
  auto* validate = app.add_subcommand("validate", "static checks on a model");
  validate->add_option("MODEL", val_model)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*batch) return run_batch(ba);
    if (*check) return run_check(ca);
    if (*simulate) return run_simulate(sim_model, steps, seed, sim_json);
    if (*validate) return run_validate(val_model);
    if (*gen) {
      if (full_cfg) vc = vcs::VcsConfig::full();
      if (ecus) vc.ecus = *ecus;
      if (buses) vc.buses = *buses;
      auto m = vcs::parse_mutant(mutant);
      if (!m) throw std::runtime_error("unknown mutant '" + mutant + "'");
      vc.mutant = *m;
      auto b = vcs::generate_vcs(vc);
      vcs::write_bundle(b, gen_out);
      std::cout << "wrote " << gen_out << " (" << b.axes << " failure axes)\n";
      return kPass;
    }
  } catch (const model::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kError;
}
