#pragma once

#include <cstdint>
#include <string_view>

#include "openrcd/rng.hpp"

namespace openrcd {

/// Curvature certificates for admissible local costs: every admitted f is
/// alpha-strongly convex and beta-smooth on x >= 0, i.e. the slope of f'
/// stays inside [alpha, beta]. kappa = beta / alpha is the condition number.
struct ClassParams {
  double alpha = 1.0;
  double beta = 1.0;

  double kappa() const { return beta / alpha; }
  void validate() const;  // throws std::invalid_argument unless 0 < alpha <= beta
};

enum class Family { Quadratic, PiecewiseQuadratic };

/// One agent's local cost on x >= 0, normalized so f(0) = 0 and f'(0) = 0.
///
///   Quadratic           f(x) = phi x^2
///   PiecewiseQuadratic  f(x) = phi1 x^2                                    x <= b
///                       f(x) = phi2 (x-b)^2 + 2 phi1 b (x-b) + phi1 b^2    x >  b
///
/// The two-piece form is C^1 at the breakpoint b. Shape parameters in
/// [alpha/2, beta/2] keep the function inside its declared class; the
/// factories do not enforce that, verify_class() checks it.
class CostFunction {
 public:
  static CostFunction quadratic(double phi, ClassParams cls);
  static CostFunction piecewise_quadratic(double phi1, double phi2,
                                          double breakpoint, ClassParams cls);

  /// f(x). Throws std::domain_error for x < 0.
  double value(double x) const;
  /// f'(x). Throws std::domain_error for x < 0.
  double derivative(double x) const;
  /// Unique x >= 0 with f'(x) = g. Throws std::domain_error for g < 0.
  double derivative_inverse(double g) const;

  Family family() const { return family_; }
  const ClassParams& class_params() const { return cls_; }

  double phi() const;         // Quadratic only
  double phi1() const;        // PiecewiseQuadratic only
  double phi2() const;        // PiecewiseQuadratic only
  double breakpoint() const;  // PiecewiseQuadratic only

 private:
  CostFunction(Family family, ClassParams cls, double a, double b, double c);

  Family family_;
  ClassParams cls_;
  double a_, b_, c_;  // phi,-,-  or  phi1,phi2,breakpoint
};

/// How incoming agents draw their cost function.
///   RR               two-piece quadratic, phi1/phi2 uniform on
///                    [alpha/2, beta/2], breakpoint uniform on (0, 2]
///   AR               quadratic, phi on the two-point set {alpha/2, beta/2}
///                    with equal probability (extreme-curvature arrivals)
///   QuadraticUniform quadratic, phi uniform on [alpha/2, beta/2]
enum class ReplacementMode { RR, AR, QuadraticUniform };

const char* to_string(ReplacementMode mode);
bool parse_replacement_mode(std::string_view text, ReplacementMode& out);

/// Samples incoming cost functions. Owns its seed stream: two instances with
/// equal seeds produce identical function sequences. Not thread-safe.
class ReplacementDistribution {
 public:
  ReplacementDistribution(ReplacementMode mode, ClassParams cls,
                          std::uint64_t seed);

  CostFunction sample();

  ReplacementMode mode() const { return mode_; }
  const ClassParams& class_params() const { return cls_; }

 private:
  ReplacementMode mode_;
  ClassParams cls_;
  Rng rng_;
};

/// Grid check of the class certificates on [0, x_max]: secant slopes of f'
/// inside [alpha, beta] within 1e-8 * beta, f(0) = 0, f'(0) = 0.
/// grid_size >= 3, x_max > 0.
bool verify_class(const CostFunction& f, int grid_size, double x_max);

}  // namespace openrcd
