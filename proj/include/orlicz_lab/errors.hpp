#pragma once

#include <stdexcept>
#include <string>

namespace orlicz_lab {

// Bad scenario/CLI configuration (maps to exit code 2 in the CLI).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear-solver breakdown or non-convergence (maps to exit code 3).
struct solver_error : std::runtime_error {
  double residual = 0.0;
  int iterations = 0;
  solver_error(const std::string& msg, double res, int its)
      : std::runtime_error(msg), residual(res), iterations(its) {}
};

}  // namespace orlicz_lab
