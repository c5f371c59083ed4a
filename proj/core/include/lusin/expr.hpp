#pragma once

// Tiny arithmetic-expression evaluator for scalar tolerance profiles
// eps(x).  Grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := number | 'x' | '-' factor | '(' expr ')'
//            | 'abs' '(' expr ')' | 'min' '(' expr ',' expr ')'
//
// Numbers are ordinary decimal literals (1, 0.25, 1e-3).  In more than
// one dimension the variable 'x' is bound to the Euclidean norm of the
// evaluation point.

#include <functional>
#include <memory>
#include <string>

#include "lusin/types.hpp"

namespace lusin {

class Expression {
 public:
  // Parses `text`; throws a Config error on any syntax problem.
  static Expression parse(const std::string& text);

  double operator()(double x) const { return fn_(x); }

  // Wraps the expression as an oracle over `dim`-dimensional points,
  // binding 'x' to |p| when dim > 1.
  ValueOracle as_oracle(int dim) const;

  const std::string& text() const { return text_; }

 private:
  Expression(std::function<double(double)> fn, std::string text)
      : fn_(std::move(fn)), text_(std::move(text)) {}

  std::function<double(double)> fn_;
  std::string text_;
};

}  // namespace lusin
