#pragma once

#include <stdexcept>
#include <string>

#include "vcsmc/model/ast.hpp"

namespace vcsmc::model {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
};

std::string format(const Diagnostic& d);

/// Static error found while flattening a model: unresolvable range bound,
/// arity mismatch, type error, cycles.
class ElaborationError : public std::runtime_error {
 public:
  ElaborationError(SourceSpan span, const std::string& message);
  SourceSpan span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

}  // namespace vcsmc::model
