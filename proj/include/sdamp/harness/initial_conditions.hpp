#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdamp/harness/expression.hpp"
#include "sdamp/spectral.hpp"

namespace sdamp::harness {

struct InitialCondition {
  std::string name;
  std::string expression;
  std::string description;
};

const std::vector<InitialCondition>& initial_condition_list();
// Registry name or "expr:<text>"; throws ConfigError otherwise.
Expression resolve_initial_condition(std::string_view ic);

// Closed-form q(x, t) on the grid for ICs that have one under `model`:
// kdv-soliton (kdv), nls-soliton (nls), linkdv-gauss (linkdv), zero (any).
bool has_analytic_solution(std::string_view ic, std::string_view model);
CVec analytic_solution(std::string_view ic, std::string_view model, const Grid& grid, double t);

}  // namespace sdamp::harness
