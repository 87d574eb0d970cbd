#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vcsmc/check/checker.hpp"
#include "vcsmc/driver/batch.hpp"
#include "vcsmc/ltl/parser.hpp"
#include "vcsmc/model/lexer.hpp"
#include "vcsmc/model/parser.hpp"
#include "vcsmc/model/validate.hpp"
#include "vcsmc/sem/elaborate.hpp"
#include "vcsmc/sem/trace.hpp"
#include "vcsmc/vcs/generator.hpp"

namespace py = pybind11;
using namespace vcsmc;

namespace {

py::object value(const sem::TransitionSystem& ts, int var, sem::Value v) {
  const auto& d = ts.vars[static_cast<std::size_t>(var)].domain;
  switch (d.kind) {
    case sem::TypeKind::Bool: return py::bool_(v != 0);
    case sem::TypeKind::Int: return py::int_(v);
    case sem::TypeKind::Enum: return py::str(ts.symbols->name(v));
  }
  return py::none();
}

py::list trace_list(const sem::TransitionSystem& ts, const sem::Trace& tr) {
  py::list steps;
  for (const auto& s : tr.states) {
    py::dict d;
    for (std::size_t v = 0; v < s.size() && v < ts.vars.size(); ++v)
      d[py::str(ts.vars[v].name)] = value(ts, static_cast<int>(v), s[v]);
    steps.append(d);
  }
  return steps;
}

py::dict verdict_dict(const sem::TransitionSystem& ts, const check::Verdict& v) {
  py::dict d;
  d["verdict"] = check::to_string(v.kind);
  d["bound"] = v.bound;
  d["violation_step"] = v.violation_step >= 0 ? py::object(py::int_(v.violation_step)) : py::none();
  d["error_step"] = v.error_step >= 0 ? py::object(py::int_(v.error_step)) : py::none();
  d["error"] = v.error;
  d["holds_on_all_paths"] = v.holds_on_all_paths;
  d["nodes"] = v.nodes;
  d["elapsed_ms"] = v.elapsed_ms;
  d["trace"] = trace_list(ts, v.trace);
  return d;
}

py::dict run_check(const std::string& source, const std::string& formula, int bound, std::optional<double> timeout,
                   bool oracle) {
  auto ts = sem::load_model(source);
  check::CheckTask t;
  t.ts = &ts;
  t.formula = ltl::parse_ltl(formula, ts);
  t.bound = bound;
  if (timeout) t.timeout = std::chrono::milliseconds(static_cast<long long>(*timeout * 1000));
  check::Verdict v;
  {
    py::gil_scoped_release release;
    v = oracle ? check::brute_force_check(t) : check::check_bounded(t);
  }
  return verdict_dict(ts, v);
}

}  // namespace

PYBIND11_MODULE(_vcsmc, m) {
  m.doc() = "Bounded model checking of synchronous models with a fault-combination batch driver";

  py::register_exception<model::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<model::ElaborationError>(m, "ElaborationError", PyExc_ValueError);
  py::register_exception<driver::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<vcs::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<check::CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  m.def(
      "validate",
      [](const std::string& source) {
        std::vector<std::string> out;
        for (const auto& d : model::validate_model(model::parse_model(source))) out.push_back(model::format(d));
        return out;
      },
      py::arg("source"), "Diagnostics for a model; empty when well-formed.");

  m.def(
      "variables",
      [](const std::string& source) {
        auto ts = sem::load_model(source);
        std::vector<std::string> names;
        for (const auto& v : ts.vars) names.push_back(v.name);
        return names;
      },
      py::arg("source"), "Qualified state variable names in state order.");

  m.def(
      "simulate",
      [](const std::string& source, std::size_t steps, std::optional<std::uint64_t> seed) {
        auto ts = sem::load_model(source);
        auto tr = sem::simulate(ts, steps, seed ? sem::seeded_random(*seed) : sem::first_choice());
        return trace_list(ts, tr);
      },
      py::arg("source"), py::arg("steps"), py::arg("seed") = py::none(),
      "One execution as a list of {variable: value} dicts.");

  m.def(
      "check",
      [](const std::string& source, const std::string& formula, int bound, std::optional<double> timeout) {
        return run_check(source, formula, bound, timeout, false);
      },
      py::arg("source"), py::arg("formula"), py::arg("bound") = 70, py::arg("timeout") = py::none(),
      "Bounded counterexample search.");

  m.def(
      "brute_force_check",
      [](const std::string& source, const std::string& formula, int bound) {
        return run_check(source, formula, bound, std::nullopt, true);
      },
      py::arg("source"), py::arg("formula"), py::arg("bound") = 70, "Exhaustive path enumeration (small models).");

  m.def(
      "generate_vcs",
      [](bool full, std::optional<int> ecus, std::optional<int> buses, const std::string& mutant) {
        auto cfg = full ? vcs::VcsConfig::full() : vcs::VcsConfig::desk();
        if (ecus) cfg.ecus = *ecus;
        if (buses) cfg.buses = *buses;
        auto mut = vcs::parse_mutant(mutant);
        if (!mut) throw vcs::ConfigError("unknown mutant '" + mutant + "'");
        cfg.mutant = *mut;
        auto b = vcs::generate_vcs(cfg);
        py::dict d;
        d["vcs.fsm"] = b.model;
        d["failures.csv"] = b.failures;
        d["target_modes.csv"] = b.target_modes;
        d["specs.ltl"] = b.specs;
        d["axes"] = b.axes;
        return d;
      },
      py::arg("full") = false, py::arg("ecus") = py::none(), py::arg("buses") = py::none(),
      py::arg("mutant") = "none", "Vehicle control system bundle as {file name: text}.");

  m.def(
      "plan",
      [](const std::string& failures, const std::string& matrix, py::object range) {
        auto cat = driver::parse_failure_catalog(failures);
        auto mx = driver::parse_target_matrix(matrix, cat, {});
        driver::PlanRange r = driver::PlanRange::full();
        if (py::isinstance<py::str>(range)) {
          auto s = range.cast<std::string>();
          if (s == "singles") r = driver::PlanRange::singles();
          else if (s != "full") throw driver::InputError("range must be 'full', 'singles' or (r1, c1, r2, c2)");
        } else if (!range.is_none()) {
          auto v = range.cast<std::vector<int>>();
          if (v.size() != 4) throw driver::InputError("range needs four numbers");
          r = driver::PlanRange::cells(v[0], v[1], v[2], v[3]);
        }
        py::list out;
        for (const auto& t : driver::plan_batch(cat, mx, r).tasks) {
          py::dict d;
          d["row"] = t.row;
          d["col"] = t.col;
          d["axes"] = t.axes;
          d["target_mode"] = t.target_mode;
          out.append(d);
        }
        return out;
      },
      py::arg("failures"), py::arg("matrix"), py::arg("range") = "full", "Planned tasks for catalog/matrix texts.");

  m.def(
      "batch",
      [](const std::string& tmpl, const std::string& failures, const std::string& matrix, const std::string& specs,
         std::vector<int> range, unsigned workers, int bound, const std::string& out) {
        auto in = driver::load_batch_inputs(tmpl, failures, matrix, specs);
        auto r = range.empty() ? driver::PlanRange::full()
                               : driver::PlanRange::cells(range.at(0), range.at(1), range.at(2), range.at(3));
        auto plan = driver::plan_batch(in.catalog, in.matrix, r);
        driver::BatchOptions opt;
        opt.workers = workers;
        opt.bound = bound;
        driver::BatchReport report;
        {
          py::gil_scoped_release release;
          report = driver::run_batch(in, plan, opt);
          driver::write_report(report, out);
        }
        py::dict counts;
        for (const auto& [o, n] : report.counts()) counts[py::str(driver::to_string(o))] = n;
        return py::make_tuple(driver::exit_code(report), counts);
      },
      py::arg("template"), py::arg("failures"), py::arg("matrix"), py::arg("specs"),
      py::arg("range") = std::vector<int>{}, py::arg("workers") = 1, py::arg("bound") = 70, py::arg("out"),
      "Runs a batch from bundle files and writes the report; returns (exit code, counts).");
}
