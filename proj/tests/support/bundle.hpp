#pragma once

#include <string>
#include <vector>

#include "vcsmc/check/checker.hpp"
#include "vcsmc/driver/batch.hpp"
#include "vcsmc/vcs/generator.hpp"

namespace vcsmc::testing {

// Driver inputs parsed straight from a generated bundle.
driver::BatchInputs bundle_inputs(const vcs::VcsBundle& b);

// Elaborated instance of the bundle's template with `axes` injected.
sem::TransitionSystem instance(const driver::BatchInputs& in, const std::vector<int>& axes,
                               const driver::InjectionWindow& window = {});

check::Verdict check(const sem::TransitionSystem& ts, const std::string& formula, int bound);

// 1-based axis number of a failure variable.
int axis_of(const driver::FailureCatalog& cat, const std::string& variable);

// Report JSON with every "wall_ms" member removed.
std::string without_timing(const std::string& report_json);

}  // namespace vcsmc::testing
