#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdamp {

// Invalid arguments, configuration, or preconditions. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure during a run (blow-up, CG non-convergence). Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlowUpError : public NumericalError {
 public:
  BlowUpError(std::size_t step, double time, const std::string& where)
      : NumericalError("non-finite field at step " + std::to_string(step) + " (t = " +
                       std::to_string(time) + ") in " + where),
        step_(step),
        time_(time) {}
  std::size_t step() const { return step_; }
  double time() const { return time_; }

 private:
  std::size_t step_;
  double time_;
};

class CgError : public NumericalError {
 public:
  CgError(std::size_t iterations, double residual)
      : NumericalError("conjugate gradient did not converge after " + std::to_string(iterations) +
                       " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

// File system failures. Exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdamp
