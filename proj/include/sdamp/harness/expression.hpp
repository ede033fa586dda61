#pragma once

// Small arithmetic-expression language for initial conditions q(x).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | 'i' | 'pi' | name '(' expr ')' | '(' expr ')'
//
// Functions: exp log sqrt sin cos tan sinh cosh tanh sech abs logistic, where
// logistic(z) = 1 / (1 + e^{-z}) is evaluated without overflow for real z.

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "sdamp/spectral.hpp"

namespace sdamp::harness {

class Expression {
 public:
  // Throws ConfigError with the offending column on malformed input.
  static Expression parse(std::string_view text);

  const std::string& source() const { return source_; }
  cplx operator()(double x) const;
  // q(x) and q'(x), the derivative carried exactly by forward-mode dual numbers.
  std::pair<cplx, cplx> value_and_derivative(double x) const;

  struct Node;

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace sdamp::harness
