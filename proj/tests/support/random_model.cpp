#include "random_model.hpp"

#include <sstream>

namespace vcsmc::testing {

namespace {

int pick(std::mt19937& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool percent(std::mt19937& rng, int p) { return pick(rng, 100) < p; }

}  // namespace

std::string random_bool_expr(std::mt19937& rng, int nvars, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    if (pick(rng, 8) == 0) return pick(rng, 2) ? "TRUE" : "FALSE";
    return "b" + std::to_string(pick(rng, nvars));
  }
  static const char* kOps[] = {" & ", " | ", " -> ", " <-> ", " = ", " != "};
  switch (pick(rng, 3)) {
    case 0: return "!(" + random_bool_expr(rng, nvars, depth - 1) + ")";
    default:
      return "(" + random_bool_expr(rng, nvars, depth - 1) + kOps[pick(rng, 6)] +
             random_bool_expr(rng, nvars, depth - 1) + ")";
  }
}

std::string random_bool_model(std::mt19937& rng, const RandomModelOptions& opts) {
  int n = opts.min_vars + pick(rng, opts.max_vars - opts.min_vars + 1);
  std::ostringstream os;
  os << "MODULE main\nVAR\n";
  for (int i = 0; i < n; ++i) os << "  b" << i << " : boolean;\n";
  os << "ASSIGN\n";
  for (int i = 0; i < n; ++i) {
    switch (pick(rng, 4)) {
      case 0: break;  // unconstrained
      case 1: os << "  init(b" << i << ") := {TRUE, FALSE};\n"; break;
      default: os << "  init(b" << i << ") := " << (pick(rng, 2) ? "TRUE" : "FALSE") << ";\n";
    }
    if (percent(rng, opts.free_percent)) continue;
    os << "  next(b" << i << ") := ";
    if (percent(rng, opts.choice_percent)) {
      if (pick(rng, 2)) {
        os << "{TRUE, FALSE};\n";
      } else {
        os << "case " << random_bool_expr(rng, n, 2) << " : {TRUE, FALSE}; TRUE : "
           << random_bool_expr(rng, n, 2) << "; esac;\n";
      }
    } else if (pick(rng, 2)) {
      os << "case " << random_bool_expr(rng, n, 2) << " : " << random_bool_expr(rng, n, 1) << "; TRUE : "
         << random_bool_expr(rng, n, 2) << "; esac;\n";
    } else {
      os << random_bool_expr(rng, n, 3) << ";\n";
    }
  }
  return os.str();
}

}  // namespace vcsmc::testing
