#pragma once

#include <random>
#include <string>

namespace vcsmc::testing {

struct LtlGenOptions {
  int nvars = 4;
  int depth = 3;
  bool future = true;   // X U R F G
  bool bounded = true;  // F[a,b] G[a,b]
  bool past = false;    // O Y H
  int max_window = 4;
};

// Random specification text over boolean variables b0..b<nvars-1>.
std::string random_ltl(std::mt19937& rng, const LtlGenOptions& opts);

// Past operators nested in a future skeleton: future operators never occur
// below a past one.
std::string random_past_ltl(std::mt19937& rng, int nvars, int past_depth);

}  // namespace vcsmc::testing
