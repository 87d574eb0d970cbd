#include "vcsmc/driver/plan.hpp"

#include <algorithm>
#include <sstream>

namespace vcsmc::driver {

std::string PlannedTask::label() const { return "combo_" + std::to_string(row) + "_" + std::to_string(col); }

namespace {

PlannedTask make_task(const TargetModeMatrix& matrix, int row, int col) {
  PlannedTask t;
  t.row = row;
  t.col = col;
  t.axes = {row};
  if (col != 0 && col != row) t.axes.push_back(col);
  t.target_mode = matrix.at(row, col == 0 ? row : col);
  t.fatal = t.target_mode == kFatal;
  return t;
}

}  // namespace

BatchPlan plan_batch(const FailureCatalog& catalog, const TargetModeMatrix& matrix, const PlanRange& range) {
  const int n = static_cast<int>(catalog.axis_count());
  if (static_cast<int>(matrix.n) != n)
    throw InputError("matrix is " + std::to_string(matrix.n) + "x" + std::to_string(matrix.n) + ", catalog has " +
                     std::to_string(n) + " axes");
  BatchPlan plan;
  if (range.kind != PlanRange::Kind::Cells)
    for (int i = 1; i <= n; ++i) plan.tasks.push_back(make_task(matrix, i, 0));
  if (range.kind == PlanRange::Kind::Singles) return plan;

  int r1 = 1, c1 = 1, r2 = n, c2 = n;
  if (range.kind == PlanRange::Kind::Cells) {
    r1 = range.r1, c1 = range.c1, r2 = range.r2, c2 = range.c2;
    auto ok = [n](int v) { return v >= 1 && v <= n; };
    if (!ok(r1) || !ok(c1) || !ok(r2) || !ok(c2) || r1 > r2 || c1 > c2)
      throw InputError("range " + std::to_string(r1) + " " + std::to_string(c1) + " " + std::to_string(r2) + " " +
                       std::to_string(c2) + " is outside 1.." + std::to_string(n) + " or empty");
  }
  for (int r = r1; r <= r2; ++r)
    for (int c = c1; c <= c2; ++c) plan.tasks.push_back(make_task(matrix, r, c));
  std::stable_sort(plan.tasks.begin(), plan.tasks.end(), [](const PlannedTask& a, const PlannedTask& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return plan;
}

namespace {

void check_window(const InjectionWindow& w) {
  if (w.start_min < 2 || w.start_max < w.start_min)
    throw InputError("injection window [" + std::to_string(w.start_min) + "," + std::to_string(w.start_max) +
                     "] must satisfy 2 <= start_min <= start_max");
}

std::string injection_block(const FailureCatalog& catalog, const std::vector<int>& axes, const InjectionWindow& w) {
  std::ostringstream os;
  std::vector<std::string> constant;
  for (std::size_t i = 1; i <= catalog.axis_count(); ++i)
    if (std::find(axes.begin(), axes.end(), static_cast<int>(i)) == axes.end())
      constant.push_back(catalog.axis(static_cast<int>(i)).variable);

  if (!constant.empty()) {
    os << "  DEFINE\n";
    for (const auto& v : constant) os << "    " << v << " := FALSE;\n";
  }
  if (axes.empty()) return os.str();

  const int last = w.start_max + 1;
  os << "  VAR\n    inj_step : 0.." << last << ";\n";
  for (int a : axes) {
    const auto& x = catalog.axis(a).variable;
    os << "    inj_go_" << x << " : boolean;\n    inj_occ_" << x << " : boolean;\n    " << x << " : boolean;\n";
  }
  os << "  ASSIGN\n    init(inj_step) := 0;\n"
     << "    next(inj_step) := case inj_step < " << last << " : inj_step + 1; TRUE : inj_step; esac;\n";
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const auto& x = catalog.axis(axes[k]).variable;
    std::string go = "inj_go_" + x, occ = "inj_occ_" + x;
    std::string arm = go;
    if (k == 1) {
      const auto& a = catalog.axis(axes[0]).variable;
      arm += " & (inj_occ_" + a + " | " + a + " | inj_go_" + a + ")";
    }
    os << "    init(" << go << ") := FALSE;\n"
       << "    next(" << go << ") := case " << occ << " | " << x << " | " << go << " : FALSE; inj_step >= "
       << w.start_min - 2 << " & inj_step <= " << w.start_max - 2 << " : {FALSE, TRUE}; TRUE : FALSE; esac;\n"
       << "    init(" << occ << ") := FALSE;\n"
       << "    next(" << occ << ") := " << occ << " | " << x << ";\n"
       << "    init(" << x << ") := FALSE;\n"
       << "    next(" << x << ") := case " << x << " : {TRUE, FALSE}; " << occ << " : FALSE; " << arm
       << " : TRUE; TRUE : FALSE; esac;\n";
  }
  return os.str();
}

}  // namespace

std::string instantiate_model(const std::string& tmpl, const FailureCatalog& catalog, const std::vector<int>& axes,
                              const InjectionWindow& window, const std::string& target_mode) {
  check_window(window);
  auto begin = tmpl.find(kInjectionBegin);
  auto end = tmpl.find(kInjectionEnd);
  if (begin == std::string::npos || end == std::string::npos || end < begin)
    throw InputError(std::string("template lacks the '") + kInjectionBegin + "' ... '" + kInjectionEnd + "' region");
  if (tmpl.find(kInjectionBegin, begin + 1) != std::string::npos)
    throw InputError("template has more than one injection region");
  auto body = tmpl.find('\n', begin);
  if (body == std::string::npos || body > end) throw InputError("injection markers must be on separate lines");
  auto end_line = tmpl.rfind('\n', end);

  Substitution sub{target_mode, axes.empty() ? "" : catalog.axis(axes[0]).variable,
                   axes.size() < 2 ? "" : catalog.axis(axes[1]).variable};
  return substitute(tmpl.substr(0, body + 1), sub) + injection_block(catalog, axes, window) +
         substitute(tmpl.substr(end_line + 1), sub);
}

std::vector<std::pair<std::string, std::string>> injection_assertions(const FailureCatalog& catalog,
                                                                      const std::vector<int>& axes,
                                                                      const InjectionWindow& window) {
  std::vector<std::pair<std::string, std::string>> out;
  for (int a : axes) {
    const auto& x = catalog.axis(a).variable;
    out.emplace_back("no_early_" + x, "G[0," + std::to_string(window.start_min - 1) + "] !" + x);
    out.emplace_back("no_reactivation_" + x, "G !(" + x + " & Y (!" + x + " & O " + x + "))");
  }
  if (axes.size() == 2) {
    const auto& a = catalog.axis(axes[0]).variable;
    const auto& b = catalog.axis(axes[1]).variable;
    out.emplace_back("order_" + a + "_" + b, "G (" + b + " -> O " + a + ")");
  }
  return out;
}

}  // namespace vcsmc::driver
