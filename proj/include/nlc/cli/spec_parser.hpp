#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nlc/core/problem.hpp"
#include "nlc/solvers/solver_node.hpp"

namespace nlc {

/// Parse or compile error in a solver specification. `position` is 1-based.
class SpecError : public ConfigError {
 public:
  SpecError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

struct SpecCall;

struct SpecValue {
  enum class Kind { number, ident, string, call };
  Kind kind = Kind::ident;
  std::string text;           // number text, identifier or unquoted string
  double number = 0.0;
  std::vector<SpecCall> call; // exactly one element when kind == call
  std::size_t position = 0;
};

struct SpecArg {
  std::string key;            // empty for positional solver arguments
  SpecValue value;
  std::size_t position = 0;
};

/// IDENT [ "(" arg ("," arg)* ")" ]
struct SpecCall {
  std::string name;
  std::vector<SpecArg> args;
  std::size_t position = 0;
  bool has_parens = false;
};

/// Parses the solver grammar
///   spec := solver ; solver := IDENT [ "(" arg ("," arg)* ")" ] ;
///   arg := IDENT "=" value | solver ; value := NUMBER | IDENT | STRING | solver.
/// Whitespace is insignificant. Throws SpecError.
SpecCall parse_spec(const std::string& text);

/// Turns a parsed call into a solver configuration, checking identifiers, keys and value types.
/// Throws SpecError with a nearest-match suggestion for unknown names.
SolverNode compile_spec(const SpecCall& call);

/// parse_spec followed by compile_spec and SolverNode::validate.
SolverNode parse_solver(const std::string& text);

/// Edit distance used for suggestions.
std::size_t levenshtein(const std::string& a, const std::string& b);

}  // namespace nlc
