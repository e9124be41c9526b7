#pragma once

#include <string>
#include <vector>

#include "mathrules/expr.hpp"

namespace mathrules {

struct Equation {
  Expr lhs;
  Expr rhs;

  friend bool operator==(const Equation& a, const Equation& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Ordered linear system: every declared variable appears only linearly in
/// every row; all other leaves are free coefficients.
struct EquationSystem {
  std::vector<std::string> variables;
  std::vector<Equation> rows;
};

}  // namespace mathrules
