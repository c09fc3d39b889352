#include "fls/error.hpp"

namespace fls {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotDirected: return "NotDirected";
    case ErrorKind::UnknownIndex: return "UnknownIndex";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotConsistent: return "NotConsistent";
    case ErrorKind::NoStageAbove: return "NoStageAbove";
    case ErrorKind::NotConsistentApplication: return "NotConsistentApplication";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::ArgumentMismatch: return "ArgumentMismatch";
    case ErrorKind::AnnotationMismatch: return "AnnotationMismatch";
    case ErrorKind::Underivable: return "Underivable";
    case ErrorKind::NotCoreFragment: return "NotCoreFragment";
    case ErrorKind::UnboundBaseType: return "UnboundBaseType";
    case ErrorKind::StateMismatch: return "StateMismatch";
    case ErrorKind::NotInLimit: return "NotInLimit";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownLaw: return "UnknownLaw";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
  }
  return "Error";
}

}  // namespace fls
