#include "vcsmc/driver/batch.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vcsmc/check/checker.hpp"
#include "vcsmc/ltl/parser.hpp"
#include "vcsmc/sem/elaborate.hpp"

namespace vcsmc::driver {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Violated: return "VIOLATED";
    case Outcome::Inconclusive: return "INCONCLUSIVE";
    case Outcome::Timeout: return "TIMEOUT";
    case Outcome::Error: return "ERROR";
  }
  return "?";
}

BatchInputs load_batch_inputs(const std::string& template_path, const std::string& failures_path,
                              const std::string& matrix_path, const std::string& specs_path,
                              const std::string& mode_var) {
  BatchInputs in;
  in.template_text = read_text_file(template_path);
  in.catalog = load_failure_catalog(failures_path);
  sem::TransitionSystem ts;
  try {
    ts = sem::load_model(in.template_text);
  } catch (const std::exception& e) {
    throw InputError(template_path + ": " + e.what());
  }
  for (const auto& f : in.catalog.entries)
    if (!ts.find(f.variable) && !ts.defines.count(f.variable))
      throw InputError(failures_path + ": variable '" + f.variable + "' of '" + f.id + "' not found in " +
                       template_path);
  auto modes = operation_modes(ts, mode_var);
  in.matrix = load_target_matrix(matrix_path, in.catalog, modes);
  in.specs = load_spec_catalog(specs_path, &ts, &in.catalog, modes);
  return in;
}

std::map<Outcome, std::size_t> BatchReport::counts() const {
  std::map<Outcome, std::size_t> c;
  for (auto o : {Outcome::Pass, Outcome::Violated, Outcome::Inconclusive, Outcome::Timeout, Outcome::Error}) c[o] = 0;
  auto add = [&c](const TaskResult& t) {
    for (const auto& s : t.specs) ++c[s.outcome];
  };
  if (baseline) add(*baseline);
  for (const auto& t : tasks) add(t);
  return c;
}

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Unit {
  std::size_t task;  // index into `all`
  std::size_t spec;  // index into the catalog
};

// The instance of one task, built once by whichever worker gets there first.
struct Instance {
  std::once_flag once;
  std::shared_ptr<const sem::TransitionSystem> ts;
  std::string error;
};

SpecResult check_unit(const BatchInputs& in, const BatchOptions& opt, const TaskResult& task, const Spec& spec,
                      Instance& inst) {
  SpecResult r;
  r.spec = spec.name;
  const auto t0 = Clock::now();
  try {
    const auto& axes = task.task.axes;
    Substitution sub{task.task.target_mode, axes.empty() ? "" : in.catalog.axis(axes[0]).variable,
                     axes.size() < 2 ? "" : in.catalog.axis(axes[1]).variable};
    r.formula = substitute(spec.formula, sub);
    std::call_once(inst.once, [&] {
      try {
        auto text = instantiate_model(in.template_text, in.catalog, axes, opt.window, task.task.target_mode);
        inst.ts = std::make_shared<const sem::TransitionSystem>(sem::load_model(text));
      } catch (const std::exception& e) {
        inst.error = std::string("instantiation failed: ") + e.what();
      }
    });
    if (!inst.ts) throw std::runtime_error(inst.error);

    check::CheckTask ct;
    ct.ts = inst.ts.get();
    ct.formula = ltl::parse_ltl(r.formula, *inst.ts);
    ct.bound = opt.bound;
    ct.timeout = opt.timeout;
    auto v = check::check_bounded(ct);
    r.nodes = v.nodes;
    switch (v.kind) {
      case check::VerdictKind::NoCounterexample:
        r.outcome = spec.unbounded_liveness && !v.holds_on_all_paths ? Outcome::Inconclusive : Outcome::Pass;
        break;
      case check::VerdictKind::Counterexample: {
        r.violation_step = v.violation_step;
        ltl::PrefixVerdict replay = ltl::PrefixVerdict::Inconclusive;
        try {
          replay = check::replay_counterexample(*inst.ts, v.trace, *ct.formula);
        } catch (const check::InvalidTrace& e) {
          r.detail = std::string("counterexample failed replay: ") + e.what();
        }
        if (replay == ltl::PrefixVerdict::Violated) {
          r.outcome = Outcome::Violated;
          r.trace = std::move(v.trace);
          r.ts = inst.ts;
        } else {
          r.outcome = Outcome::Error;
          if (r.detail.empty()) r.detail = "counterexample replays to " + std::string(ltl::to_string(replay));
        }
        break;
      }
      case check::VerdictKind::ModelError:
        r.outcome = Outcome::Error;
        r.error_step = v.error_step;
        r.detail = "model error at step " + std::to_string(v.error_step) + ": " + v.error;
        break;
      case check::VerdictKind::Timeout:
        r.outcome = Outcome::Timeout;
        r.detail = "budget exhausted";
        break;
    }
  } catch (const std::exception& e) {
    r.outcome = Outcome::Error;
    r.detail = e.what();
  }
  r.wall_ms = ms_since(t0);
  return r;
}

}  // namespace

BatchReport run_batch(const BatchInputs& in, const BatchPlan& plan, const BatchOptions& opt) {
  const auto t0 = Clock::now();
  BatchReport report;
  report.bound = opt.bound;
  report.window = opt.window;

  std::vector<TaskResult> all;
  if (opt.baseline) all.emplace_back();
  for (const auto& t : plan.tasks) all.emplace_back().task = t;

  std::vector<Unit> units;
  for (std::size_t i = 0; i < all.size(); ++i) {
    TaskResult& tr = all[i];
    const bool base = opt.baseline && i == 0;
    for (int a : tr.task.axes) tr.failures.push_back(in.catalog.axis(a).variable);
    for (std::size_t s = 0; s < in.specs.specs.size(); ++s) {
      const Spec& spec = in.specs.specs[s];
      bool applies = base ? spec.applies_to_baseline()
                          : (tr.task.is_pair() ? spec.applies_to_double() : spec.applies_to_single());
      if (!applies) continue;
      if (!base && tr.task.fatal && spec.uses_target()) {
        tr.skipped.push_back(spec.name);
        continue;
      }
      units.push_back({i, s});
    }
  }

  std::vector<Instance> instances(all.size());
  std::vector<SpecResult> results(units.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t u; (u = next.fetch_add(1)) < units.size();) {
      const Unit& unit = units[u];
      results[u] = check_unit(in, opt, all[unit.task], in.specs.specs[unit.spec], instances[unit.task]);
      std::size_t d = done.fetch_add(1) + 1;
      if (opt.progress) {
        std::lock_guard lock(progress_mutex);
        opt.progress(d, units.size());
      }
    }
  };
  const unsigned w = std::max(1u, opt.workers);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < w; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t u = 0; u < units.size(); ++u) {
    TaskResult& tr = all[units[u].task];
    tr.wall_ms += results[u].wall_ms;
    tr.specs.push_back(std::move(results[u]));
  }
  std::size_t first = 0;
  if (opt.baseline) report.baseline = std::move(all[0]), first = 1;
  for (std::size_t i = first; i < all.size(); ++i) report.tasks.push_back(std::move(all[i]));
  report.wall_ms = ms_since(t0);
  return report;
}

namespace {

using Json = nlohmann::ordered_json;

std::string label_of(const TaskResult& t) { return t.task.row == 0 ? "baseline" : t.task.label(); }

Json task_json(const TaskResult& t) {
  Json j;
  j["row"] = t.task.row;
  j["col"] = t.task.col;
  j["label"] = label_of(t);
  j["failures"] = t.failures;
  j["target_mode"] = t.task.row == 0 ? Json(nullptr) : Json(t.task.target_mode);
  j["skipped"] = t.skipped;
  j["wall_ms"] = t.wall_ms;
  Json specs = Json::array();
  for (const auto& s : t.specs) {
    Json r;
    r["spec"] = s.spec;
    r["formula"] = s.formula;
    r["verdict"] = to_string(s.outcome);
    if (s.violation_step >= 0) r["violation_step"] = s.violation_step;
    if (s.error_step >= 0) r["error_step"] = s.error_step;
    if (!s.trace_path.empty()) r["trace"] = s.trace_path;
    if (!s.detail.empty()) r["detail"] = s.detail;
    r["nodes"] = s.nodes;
    r["wall_ms"] = s.wall_ms;
    specs.push_back(std::move(r));
  }
  j["specs"] = std::move(specs);
  return j;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error(p.string() + ": cannot write");
  out << text;
  if (!out) throw std::runtime_error(p.string() + ": write failed");
}

}  // namespace

std::string report_json(const BatchReport& report) {
  Json j;
  j["bound"] = report.bound;
  j["window"] = {report.window.start_min, report.window.start_max};
  auto counts = report.counts();
  Json summary;
  summary["tasks"] = report.tasks.size();
  std::size_t units = 0;
  for (auto& [o, n] : counts) summary[to_string(o)] = n, units += n;
  summary["units"] = units;
  summary["wall_ms"] = report.wall_ms;
  j["summary"] = std::move(summary);
  j["baseline"] = report.baseline ? task_json(*report.baseline) : Json(nullptr);
  Json tasks = Json::array();
  for (const auto& t : report.tasks) tasks.push_back(task_json(t));
  j["tasks"] = std::move(tasks);
  return j.dump(2) + "\n";
}

std::string report_summary(const BatchReport& report) {
  std::ostringstream os;
  auto counts = report.counts();
  os << "tasks: " << report.tasks.size() << "  bound: " << report.bound << "  window: [" << report.window.start_min
     << "," << report.window.start_max << "]\n";
  for (auto& [o, n] : counts) os << std::left << std::setw(13) << to_string(o) << n << '\n';
  os << "elapsed: " << std::fixed << std::setprecision(1) << report.wall_ms / 1000.0 << " s\n\n";

  auto row = [&os](const TaskResult& t) {
    std::string failures;
    for (const auto& f : t.failures) failures += (failures.empty() ? "" : "+") + f;
    if (failures.empty()) failures = "-";
    for (const auto& s : t.specs) {
      os << std::left << std::setw(16) << label_of(t) << std::setw(28) << failures << std::setw(11)
         << (t.task.row == 0 ? "-" : t.task.target_mode) << std::setw(28) << s.spec << to_string(s.outcome);
      if (s.violation_step >= 0) os << " @" << s.violation_step;
      if (!s.trace_path.empty()) os << "  " << s.trace_path;
      os << '\n';
    }
    for (const auto& s : t.skipped)
      os << std::left << std::setw(16) << label_of(t) << std::setw(28) << failures << std::setw(11)
         << t.task.target_mode << std::setw(28) << s << "skipped (FATAL)\n";
  };
  os << std::left << std::setw(16) << "combination" << std::setw(28) << "failures" << std::setw(11) << "target"
     << std::setw(28) << "spec" << "verdict\n";
  if (report.baseline) row(*report.baseline);
  for (const auto& t : report.tasks) row(t);
  return os.str();
}

void write_report(BatchReport& report, const std::string& dir) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw std::runtime_error(root.string() + ": " + ec.message());
  auto file_traces = [&](TaskResult& t) {
    for (auto& s : t.specs) {
      if (s.outcome != Outcome::Violated || !s.ts) continue;
      fs::path rel = fs::path("cex") / label_of(t);
      fs::create_directories(root / rel, ec);
      if (ec) throw std::runtime_error((root / rel).string() + ": " + ec.message());
      write_file(root / rel / (s.spec + ".trace"), sem::trace_to_text(*s.ts, s.trace));
      write_file(root / rel / (s.spec + ".json"), sem::trace_to_json(*s.ts, s.trace));
      s.trace_path = (rel / (s.spec + ".trace")).generic_string();
    }
  };
  if (report.baseline) file_traces(*report.baseline);
  for (auto& t : report.tasks) file_traces(t);
  write_file(root / "report.json", report_json(report));
  write_file(root / "summary.txt", report_summary(report));
}

int exit_code(const BatchReport& report) {
  auto c = report.counts();
  if (c[Outcome::Error] || c[Outcome::Timeout] || c[Outcome::Inconclusive]) return 2;
  if (c[Outcome::Violated]) return 1;
  return 0;
}

}  // namespace vcsmc::driver
