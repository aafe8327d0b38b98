#pragma once

// Error-function family and the standard normal distribution.
//
// Everything here is implemented from scratch on top of <cmath>'s exp/log so
// that results are identical wherever IEEE double arithmetic is available.

namespace ivest {

/// A probability together with its complement.
///
/// Both tails are kept so that values close to 1 do not lose their upper-tail
/// information to rounding: Probability::from_complement(1e-20) is a perfectly
/// good probability whose value() rounds to 1.0 but whose complement() is
/// exact. Constructed from a plain double, the complement is 1 - p.
class Probability {
 public:
  /// Throws InvalidProbability unless 0 <= p <= 1.
  explicit Probability(double p);

  static Probability from_complement(double q);

  /// Both tails computed independently; they must be consistent to within
  /// rounding (lower + upper == 1 up to a few ulps) and each lie in [0, 1].
  static Probability from_tails(double lower, double upper);

  double value() const noexcept { return lower_; }
  double complement() const noexcept { return upper_; }

  /// The smaller of value() and complement().
  double tail() const noexcept { return lower_ <= upper_ ? lower_ : upper_; }

  /// Strictly inside (0, 1).
  bool is_interior() const noexcept { return lower_ > 0.0 && upper_ > 0.0; }

 private:
  Probability(double lower, double upper, int) : lower_(lower), upper_(upper) {}

  double lower_ = 0.0;
  double upper_ = 1.0;
};

namespace specfun {

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kSqrtPi = 1.77245385090551602730;

double erf(double x);
double erfc(double x);

/// Scaled complementary error function exp(x^2) * erfc(x). Finite for every
/// x > -26.6; overflows to +inf below.
double erfcx(double x);

/// Inverse of erf on (-1, 1). Throws InvalidProbability outside that range.
double erfinv(double y);

/// Inverse of erfc on (0, 2). Throws InvalidProbability outside that range.
double erfcinv(double y);

double std_normal_pdf(double z);

/// Phi(z) = erfc(-z / sqrt(2)) / 2. Both tails are evaluated directly.
Probability std_normal_cdf(double z);

/// Inverse of std_normal_cdf for p in (0, 1). Uses whichever tail of p is
/// smaller, so quantiles deep in the upper tail are as accurate as those in
/// the lower tail. Throws InvalidProbability when p is 0 or 1.
double std_normal_quantile(Probability p);

/// log Phi(z), finite for every finite z.
double log_std_normal_cdf(double z);

}  // namespace specfun
}  // namespace ivest
