#pragma once

#include "corb/bigint.hpp"

#include <vector>

namespace corb {

struct LpResult {
  enum class Status { Infeasible, Optimal, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

// maximize c.x subject to A x = b, x >= 0; dense two-phase simplex, Bland's rule
LpResult lp_maximize(const std::vector<std::vector<Rational>> &A, const std::vector<Rational> &b,
                     const std::vector<Rational> &c);

bool lp_feasible(const std::vector<std::vector<Rational>> &A, const std::vector<Rational> &b);

} // namespace corb
