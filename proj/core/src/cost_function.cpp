#include "openrcd/cost_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace openrcd {

void ClassParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("ClassParams: alpha must be positive");
  }
  if (!(beta >= alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("ClassParams: beta must satisfy beta >= alpha");
  }
}

CostFunction::CostFunction(Family family, ClassParams cls, double a, double b,
                           double c)
    : family_(family), cls_(cls), a_(a), b_(b), c_(c) {}

CostFunction CostFunction::quadratic(double phi, ClassParams cls) {
  cls.validate();
  if (!(phi > 0.0) || !std::isfinite(phi)) {
    throw std::invalid_argument("CostFunction: phi must be positive");
  }
  return CostFunction(Family::Quadratic, cls, phi, 0.0, 0.0);
}

CostFunction CostFunction::piecewise_quadratic(double phi1, double phi2,
                                               double breakpoint,
                                               ClassParams cls) {
  cls.validate();
  if (!(phi1 > 0.0) || !(phi2 > 0.0) || !std::isfinite(phi1) ||
      !std::isfinite(phi2)) {
    throw std::invalid_argument("CostFunction: phi1/phi2 must be positive");
  }
  if (!(breakpoint > 0.0) || !std::isfinite(breakpoint)) {
    throw std::invalid_argument("CostFunction: breakpoint must be positive");
  }
  return CostFunction(Family::PiecewiseQuadratic, cls, phi1, phi2, breakpoint);
}

double CostFunction::value(double x) const {
  if (x < 0.0) throw std::domain_error("CostFunction::value: x < 0");
  if (family_ == Family::Quadratic) return a_ * x * x;
  if (x <= c_) return a_ * x * x;
  const double d = x - c_;
  return b_ * d * d + 2.0 * a_ * c_ * d + a_ * c_ * c_;
}

double CostFunction::derivative(double x) const {
  if (x < 0.0) throw std::domain_error("CostFunction::derivative: x < 0");
  if (family_ == Family::Quadratic) return 2.0 * a_ * x;
  if (x <= c_) return 2.0 * a_ * x;
  return 2.0 * b_ * (x - c_) + 2.0 * a_ * c_;
}

double CostFunction::derivative_inverse(double g) const {
  if (g < 0.0) {
    throw std::domain_error("CostFunction::derivative_inverse: g < 0");
  }
  if (family_ == Family::Quadratic) return g / (2.0 * a_);
  const double knee = 2.0 * a_ * c_;  // f'(breakpoint)
  if (g <= knee) return g / (2.0 * a_);
  return c_ + (g - knee) / (2.0 * b_);
}

double CostFunction::phi() const {
  if (family_ != Family::Quadratic) {
    throw std::logic_error("CostFunction::phi: not a Quadratic");
  }
  return a_;
}

double CostFunction::phi1() const {
  if (family_ != Family::PiecewiseQuadratic) {
    throw std::logic_error("CostFunction::phi1: not a PiecewiseQuadratic");
  }
  return a_;
}

double CostFunction::phi2() const {
  if (family_ != Family::PiecewiseQuadratic) {
    throw std::logic_error("CostFunction::phi2: not a PiecewiseQuadratic");
  }
  return b_;
}

double CostFunction::breakpoint() const {
  if (family_ != Family::PiecewiseQuadratic) {
    throw std::logic_error("CostFunction::breakpoint: not a PiecewiseQuadratic");
  }
  return c_;
}

const char* to_string(ReplacementMode mode) {
  switch (mode) {
    case ReplacementMode::RR:
      return "rr";
    case ReplacementMode::AR:
      return "ar";
    case ReplacementMode::QuadraticUniform:
      return "quadratic-uniform";
  }
  return "?";
}

bool parse_replacement_mode(std::string_view text, ReplacementMode& out) {
  if (text == "rr") {
    out = ReplacementMode::RR;
  } else if (text == "ar") {
    out = ReplacementMode::AR;
  } else if (text == "quadratic-uniform") {
    out = ReplacementMode::QuadraticUniform;
  } else {
    return false;
  }
  return true;
}

ReplacementDistribution::ReplacementDistribution(ReplacementMode mode,
                                                 ClassParams cls,
                                                 std::uint64_t seed)
    : mode_(mode), cls_(cls), rng_(seed) {
  cls_.validate();
}

CostFunction ReplacementDistribution::sample() {
  const double lo = 0.5 * cls_.alpha;
  const double hi = 0.5 * cls_.beta;
  switch (mode_) {
    case ReplacementMode::RR: {
      // Fixed draw order: phi1, phi2, breakpoint.
      const double phi1 = rng_.uniform(lo, hi);
      const double phi2 = rng_.uniform(lo, hi);
      const double breakpoint = 2.0 - 2.0 * rng_.uniform01();  // (0, 2]
      return CostFunction::piecewise_quadratic(phi1, phi2, breakpoint, cls_);
    }
    case ReplacementMode::AR:
      return CostFunction::quadratic(rng_.bernoulli(0.5) ? lo : hi, cls_);
    case ReplacementMode::QuadraticUniform:
      return CostFunction::quadratic(rng_.uniform(lo, hi), cls_);
  }
  throw std::logic_error("ReplacementDistribution: unknown mode");
}

bool verify_class(const CostFunction& f, int grid_size, double x_max) {
  if (grid_size < 3) {
    throw std::invalid_argument("verify_class: grid_size must be >= 3");
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw std::invalid_argument("verify_class: x_max must be positive");
  }
  const ClassParams& cls = f.class_params();
  if (f.value(0.0) != 0.0 || f.derivative(0.0) != 0.0) return false;
  const double tol = 1e-8 * cls.beta;
  const double h = x_max / (grid_size - 1);
  for (int k = 0; k + 1 < grid_size; ++k) {
    const double x = k * h;
    const double slope = (f.derivative(x + h) - f.derivative(x)) / h;
    if (slope < cls.alpha - tol || slope > cls.beta + tol) return false;
  }
  return true;
}

}  // namespace openrcd
