#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fls {

enum class ErrorKind {
  NotDirected,
  UnknownIndex,
  UnknownState,
  ArityMismatch,
  SizeLimitExceeded,
  NotConsistent,
  NoStageAbove,
  NotConsistentApplication,
  SyntaxError,
  UnboundVariable,
  NotAFunction,
  ArgumentMismatch,
  AnnotationMismatch,
  Underivable,
  NotCoreFragment,
  UnboundBaseType,
  StateMismatch,
  NotInLimit,
  ParseError,
  UnknownLaw,
  InvalidSystem,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fls
