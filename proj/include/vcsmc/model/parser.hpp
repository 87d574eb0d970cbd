#pragma once

#include <string_view>

#include "vcsmc/model/ast.hpp"
#include "vcsmc/model/lexer.hpp"

namespace vcsmc::model {

struct ParseOptions {
  /// When false, a repeated module name is rejected by the parser. The
  /// validator reports the same condition as a diagnostic when it is allowed.
  bool allow_duplicate_modules = false;
};

/// Parses a `.fsm` model. Throws ParseError with position and expected tokens.
ModelAst parse_model(std::string_view text, const ParseOptions& options = {});

/// Parses a single expression (no trailing tokens allowed).
ExprPtr parse_expression(std::string_view text);

/// Expression parsing entry shared with the LTL front end. Parses at the
/// comparison level, i.e. `a + 1 = b` but not `a & b`.
ExprPtr parse_comparison(TokenStream& ts);
ExprPtr parse_expr(TokenStream& ts);

}  // namespace vcsmc::model
