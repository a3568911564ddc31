#pragma once

#include "supercalc/cartan.hpp"
#include "supercalc/coordchange.hpp"
#include "supercalc/supertensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace supercalc {

/// Malformed expression or problem file; position is a byte offset into the
/// expression, line is 1-based in the file (0 when not applicable).
class ParseError : public SupercalcError {
 public:
  ParseError(const std::string& what, std::size_t position, int line = 0);
  std::size_t position() const { return position_; }
  int line() const { return line_; }

 private:
  std::size_t position_;
  int line_;
};

/// Infix grammar: + - * / ^ with integer exponents, parentheses, integer
/// literals and declared coordinate names. Juxtaposition is rejected.
SuperFunction parse_expression(const std::string& text, const Chart& chart);

/// Algebra block: either the stabilizer of a named tensor or explicit
/// generator matrices over the given parities.
struct AlgebraSpec {
  std::string stabilizer_of;
  std::vector<int> parities;
  std::vector<RationalMatrix> generators;
};

struct ProblemFile {
  Chart chart;
  std::vector<std::pair<std::string, Tensor2>> tensors;  // declaration order
  std::optional<SuperFunction> potential;
  std::vector<std::pair<std::string, SuperDiffeo>> diffeos;
  std::vector<std::pair<std::string, AlgebraSpec>> algebras;

  /// Named tensor; an empty name picks the first one.
  const Tensor2& tensor(const std::string& name = {}) const;
  const SuperDiffeo& diffeo(const std::string& name = {}) const;
  LinearLieAlgebra algebra(const std::string& name = {}) const;
  SuperFunction potential_or_zero() const { return potential ? *potential : SuperFunction(chart); }
};

ProblemFile parse_problem(const std::string& text);
/// Reads and parses a file; an unreadable file raises SupercalcError.
ProblemFile load_problem(const std::string& path);

}  // namespace supercalc
