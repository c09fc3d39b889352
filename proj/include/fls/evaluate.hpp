#pragma once

// Evaluation of a term given as text, shared by the command line and the
// Python module.

#include <optional>
#include <string>
#include <vector>

#include "fls/interp.hpp"

namespace fls {

struct EvalRequest {
  std::string term;
  /// Comma-separated context types.
  std::string context;
  /// Comma-separated stage indices; empty means the top index of each entry.
  std::string stage;
  /// Result index; empty means the top index when derivable, otherwise the
  /// last derivable one.
  std::string at;
  /// One "elem" or "elem@index" per context entry.
  std::vector<std::string> values;
  bool stage_value = true;
  bool limit_value = true;
};

struct EvalOutcome {
  std::string judgement;        // "(nat) |- x0 : nat"
  std::string state_judgement;  // "(2) |- x0 => 3", when evaluated at a stage
  std::string stage;            // "1@3"
  std::string limit;            // "{1@2,1@3}"
  std::optional<bool> reflection;
};

/// The limit environment is the stage environment embedded into the limit.
/// Throws NotCoreFragment, Underivable, SyntaxError, ParseError and
/// StateMismatch.
EvalOutcome evaluate(const Interpreter& in, const EvalRequest& request);

}  // namespace fls
