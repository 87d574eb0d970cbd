#pragma once

#include <string>

#include "vcsmc/model/ast.hpp"

namespace vcsmc::model {

/// Canonical source text. Parentheses are emitted only where precedence
/// requires them, so parse(print(ast)) is structurally equal to ast.
std::string pretty_print(const ModelAst& ast);
std::string pretty_print(const ModuleDecl& module);
std::string pretty_print(const Expr& expr);

}  // namespace vcsmc::model
