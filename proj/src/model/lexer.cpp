#include "vcsmc/model/lexer.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <sstream>

namespace vcsmc::model {

namespace {

std::string describe(SourceSpan span, const std::string& message,
                     const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << span.line << ":" << span.column << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << ", ";
      os << "'" << expected[i] << "'";
    }
    os << ")";
  }
  return os.str();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '#';
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : std::runtime_error(describe(span, message, expected)),
      span_(span),
      expected_(std::move(expected)) {}

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 11> kWords = {
      "MODULE", "VAR", "ASSIGN", "DEFINE", "init", "next",
      "case",   "esac", "TRUE",  "FALSE",  "boolean"};
  for (auto w : kWords)
    if (w == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  // Longest spellings first so that "->" wins over "-".
  static constexpr std::array<std::string_view, 24> kSymbols = {
      "<->", ":=", "..", "->", "!=", "<=", ">=", "(", ")", "{", "}", "[",
      "]",   ",",  ";",  ":",  ".",  "=",  "<",  ">", "&", "|", "!", "+"};
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.span = {line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::int64_t v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        if (v > (std::numeric_limits<std::int32_t>::max() - 9) / 10)
          throw ParseError(tok.span, "integer literal out of range");
        v = v * 10 + (text[j] - '0');
        ++j;
      }
      tok.kind = TokenKind::Integer;
      tok.text = std::string(text.substr(i, j - i));
      tok.value = v;
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        tok.kind = TokenKind::Symbol;
        tok.text = std::string(sym);
        advance(sym.size());
        out.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c == '-') {
      tok.kind = TokenKind::Symbol;
      tok.text = "-";
      advance(1);
      out.push_back(std::move(tok));
      continue;
    }
    throw ParseError(tok.span, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = TokenKind::End;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t idx = pos_ + ahead;
  if (idx >= tokens_.size()) return tokens_.back();
  return tokens_[idx];
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::is_symbol(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Symbol && t.text == s;
}

bool TokenStream::is_word(std::string_view w, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Identifier && t.text == w;
}

bool TokenStream::accept_symbol(std::string_view s) {
  if (!is_symbol(s)) return false;
  next();
  return true;
}

bool TokenStream::accept_word(std::string_view w) {
  if (!is_word(w)) return false;
  next();
  return true;
}

const Token& TokenStream::expect_symbol(std::string_view s) {
  if (!is_symbol(s)) fail({std::string(s)});
  return next();
}

const Token& TokenStream::expect_word(std::string_view w) {
  if (!is_word(w)) fail({std::string(w)});
  return next();
}

const Token& TokenStream::expect_identifier() {
  const Token& t = peek();
  if (t.kind != TokenKind::Identifier || is_reserved_word(t.text)) fail({"identifier"});
  return next();
}

std::int64_t TokenStream::expect_integer() {
  if (peek().kind != TokenKind::Integer) fail({"integer"});
  return next().value;
}

void TokenStream::fail(std::vector<std::string> expected) const {
  const Token& t = peek();
  std::string found = t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'";
  throw ParseError(t.span, "syntax error at " + found, std::move(expected));
}

}  // namespace vcsmc::model
