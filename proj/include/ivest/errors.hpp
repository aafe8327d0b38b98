#pragma once

#include <stdexcept>
#include <string>

namespace ivest {

// A probability argument fell outside its admissible range.
class InvalidProbability : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A precondition on a non-probability argument was violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine (root finder, quadrature) missed its tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A rejection sampler hit its per-trial redraw limit.
class ResamplingCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ivest
