#include "vcsmc/model/diagnostic.hpp"

namespace vcsmc::model {

namespace {

std::string where(SourceSpan span) {
  if (span.line == 0) return "";
  return std::to_string(span.line) + ":" + std::to_string(span.column) + ": ";
}

}  // namespace

std::string format(const Diagnostic& d) {
  return where(d.span) + (d.severity == Severity::Error ? "error: " : "warning: ") + d.message;
}

ElaborationError::ElaborationError(SourceSpan span, const std::string& message)
    : std::runtime_error(where(span) + message), span_(span), message_(message) {}

}  // namespace vcsmc::model
