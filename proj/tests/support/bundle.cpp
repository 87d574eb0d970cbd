#include "support/bundle.hpp"

#include <nlohmann/json.hpp>

#include "vcsmc/ltl/parser.hpp"
#include "vcsmc/sem/elaborate.hpp"

namespace vcsmc::testing {

driver::BatchInputs bundle_inputs(const vcs::VcsBundle& b) {
  driver::BatchInputs in;
  in.template_text = b.model;
  in.catalog = driver::parse_failure_catalog(b.failures);
  auto ts = sem::load_model(b.model);
  auto modes = driver::operation_modes(ts);
  in.matrix = driver::parse_target_matrix(b.target_modes, in.catalog, modes);
  in.specs = driver::parse_spec_catalog(b.specs, &ts, &in.catalog, modes);
  return in;
}

sem::TransitionSystem instance(const driver::BatchInputs& in, const std::vector<int>& axes,
                               const driver::InjectionWindow& window) {
  return sem::load_model(driver::instantiate_model(in.template_text, in.catalog, axes, window));
}

check::Verdict check(const sem::TransitionSystem& ts, const std::string& formula, int bound) {
  check::CheckTask t;
  t.ts = &ts;
  t.formula = ltl::parse_ltl(formula, ts);
  t.bound = bound;
  return check::check_bounded(t);
}

int axis_of(const driver::FailureCatalog& cat, const std::string& variable) {
  for (std::size_t i = 1; i <= cat.axis_count(); ++i)
    if (cat.axis(static_cast<int>(i)).variable == variable) return static_cast<int>(i);
  throw std::out_of_range("no axis " + variable);
}

namespace {

void strip(nlohmann::ordered_json& j) {
  if (j.is_object()) {
    j.erase("wall_ms");
    for (auto& [k, v] : j.items()) strip(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip(v);
  }
}

}  // namespace

std::string without_timing(const std::string& report_json) {
  auto j = nlohmann::ordered_json::parse(report_json);
  strip(j);
  return j.dump(1);
}

}  // namespace vcsmc::testing
