#include "ivest/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <limits>

#include "ivest/errors.hpp"

namespace ivest::numeric {

double bisect(const ScalarFunction& f, double lo, double hi, const BisectionOptions& opts) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  double width = std::max(hi - lo, 1.0);
  for (int i = 0; i < opts.max_expansions && (flo > 0.0) == (fhi > 0.0); ++i) {
    if (std::abs(flo) < std::abs(fhi)) {
      lo -= width;
      flo = f(lo);
    } else {
      hi += width;
      fhi = f(hi);
    }
    width *= 2.0;
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    if (flo == 0.0) return lo;
    throw NumericError("bisection could not bracket a sign change",
                       std::min(std::abs(flo), std::abs(fhi)));
  }

  double best_x = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double best_f = std::min(std::abs(flo), std::abs(fhi));
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || (opts.x_tol > 0.0 && hi - lo <= opts.x_tol)) break;
    const double fm = f(mid);
    if (std::abs(fm) < best_f) {
      best_f = std::abs(fm);
      best_x = mid;
    }
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (best_f > opts.residual_tol && opts.x_tol == 0.0) {
    throw NumericError("bisection missed its residual tolerance", best_f);
  }
  return best_x;
}

namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const ScalarFunction& f, const Panel& p, double tol, int depth, const SimpsonOptions& opts) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double err = (left + right - p.whole) / 15.0;
  if (std::abs(err) <= tol) return left + right + err;
  if (depth >= opts.max_depth) {
    if (opts.accept_at_max_depth) return left + right;
    throw NumericError("adaptive Simpson reached its depth limit", err);
  }
  return refine(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1, opts) +
         refine(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1, opts);
}

}  // namespace

double adaptive_simpson(const ScalarFunction& f, double a, double b, const SimpsonOptions& opts) {
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);
  const std::size_t panels = std::max<std::size_t>(1, opts.initial_panels);
  const double h = (b - a) / static_cast<double>(panels);
  const double tol = opts.abs_tol / static_cast<double>(panels);

  double total = 0.0;
  double x0 = a;
  double f0 = f(a);
  for (std::size_t i = 0; i < panels; ++i) {
    const double x1 = i + 1 == panels ? b : a + h * static_cast<double>(i + 1);
    const double xm = 0.5 * (x0 + x1);
    const double f1 = f(x1);
    const double fm = f(xm);
    total += refine(f, {x0, xm, x1, f0, fm, f1, simpson(x0, x1, f0, fm, f1)}, tol, 0, opts);
    x0 = x1;
    f0 = f1;
  }
  return sign * total;
}

double midpoint_sum(const ScalarFunction& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += f(a + h * (static_cast<double>(i) + 0.5));
  return sum * h;
}

}  // namespace ivest::numeric
