#pragma once

#include <cstddef>
#include <functional>

namespace ivest::numeric {

using ScalarFunction = std::function<double(double)>;

struct BisectionOptions {
  double residual_tol = 1e-12;  // |f(root)| target
  double x_tol = 0.0;           // stop once the bracket is this narrow (0 = machine limit)
  int max_expansions = 60;
  int max_iterations = 400;
};

/// Root of a monotone f by bracketing bisection. The bracket [lo, hi] is
/// widened geometrically until f changes sign. Throws NumericError (with the
/// best residual seen) if no sign change is found or the residual tolerance
/// is missed.
double bisect(const ScalarFunction& f, double lo, double hi, const BisectionOptions& opts = {});

struct SimpsonOptions {
  double abs_tol = 1e-9;
  int max_depth = 50;
  std::size_t initial_panels = 16;
  // Step-function integrands never meet a halving tolerance at their jumps;
  // with this set, panels at max_depth are accepted instead of failing.
  bool accept_at_max_depth = false;
};

/// Adaptive Simpson quadrature of f over [a, b]. The range is first split
/// into `initial_panels` equal pieces sharing the tolerance. Throws
/// NumericError when a panel reaches max_depth without meeting its share.
double adaptive_simpson(const ScalarFunction& f, double a, double b, const SimpsonOptions& opts = {});

/// Composite midpoint rule with n equal panels.
double midpoint_sum(const ScalarFunction& f, double a, double b, std::size_t n);

}  // namespace ivest::numeric
