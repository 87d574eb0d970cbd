#pragma once

#include <vector>

#include "vcsmc/model/ast.hpp"
#include "vcsmc/model/diagnostic.hpp"

namespace vcsmc::model {

/// Static checks on a parsed model. Structural problems (module table,
/// resolution, case defaults, set literal placement, define cycles) are
/// reported first; typing is only checked once the structure is sound, so a
/// single mistake yields a single diagnostic. Empty result means well-formed.
std::vector<Diagnostic> validate_model(const ModelAst& ast);

}  // namespace vcsmc::model
