#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vcsmc/model/ast.hpp"

namespace vcsmc::model {

enum class TokenKind {
  Identifier,
  Integer,
  Symbol,  // punctuation and operators, text holds the spelling
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::int64_t value = 0;
  SourceSpan span;
};

/// Raised for every lexical and syntactic failure. `expected` lists the
/// token spellings that would have been accepted at the failure point.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::string message, std::vector<std::string> expected = {});

  SourceSpan span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

/// Splits source text into tokens. `--` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_symbol(std::string_view s, std::size_t ahead = 0) const;
  bool is_word(std::string_view w, std::size_t ahead = 0) const;
  bool accept_symbol(std::string_view s);
  bool accept_word(std::string_view w);
  const Token& expect_symbol(std::string_view s);
  const Token& expect_word(std::string_view w);
  const Token& expect_identifier();
  std::int64_t expect_integer();

  [[noreturn]] void fail(std::vector<std::string> expected) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_reserved_word(std::string_view word);

}  // namespace vcsmc::model
