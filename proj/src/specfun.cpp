// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/specfun.hpp"

#include <math.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bppdist/errors.hpp"

namespace bppdist::specfun {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLn2Pi = 0.91893853320467274178032973640562;

// Above this size ln B(a,b) is assembled from Stirling remainders so the
// huge (a-1/2) ln a style terms cancel analytically, not numerically.
constexpr double kStirlingThreshold = 20.0;

// Modified Lentz evaluation of the continued fraction for I_x(a,b);
// converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  const int max_iter = 200 + static_cast<int>(20.0 * std::sqrt(std::max(a, b)));
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("reg_inc_beta: continued fraction did not converge for a=" +
                         std::to_string(a) + ", b=" + std::to_string(b));
}

// Saddle-point deviance k ln(k/m) + m - k.
double poisson_deviance(double k, double m) {
  if (std::fabs(k - m) < 0.1 * (k + m)) {
    double v = (k - m) / (k + m);
    double s = (k - m) * v;
    double ej = 2.0 * k * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return k * std::log(k / m) + m - k;
}

void require_positive(double v, const char* what, const char* fn) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(fn) + ": " + what + " must be finite and > 0");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be > 0");
  if (std::isinf(x)) return kInf;
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double stirling_correction(double x) {
  if (!(x > 0.0)) throw DomainError("stirling_correction: argument must be > 0");
  if (x >= 10.0) {
    const double z = 1.0 / (x * x);
    // Bernoulli-number series; truncation error < 1e-17 for x >= 10.
    return (1.0 / 12.0 -
            z * (1.0 / 360.0 -
                 z * (1.0 / 1260.0 -
                      z * (1.0 / 1680.0 -
                           z * (1.0 / 1188.0 - z * (691.0 / 360360.0 - z / 156.0)))))) /
           x;
  }
  return ln_gamma(x) - ((x - 0.5) * std::log(x) - x + kHalfLn2Pi);
}

double ln_beta(double a, double b) {
  require_positive(a, "a", "ln_beta");
  require_positive(b, "b", "ln_beta");
  if (std::max(a, b) < kStirlingThreshold) {
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
  }
  const double s = a + b;
  return kHalfLn2Pi + (a - 0.5) * std::log(a / s) + b * std::log(b / s) -
         0.5 * std::log(b) + stirling_correction(a) + stirling_correction(b) -
         stirling_correction(s);
}

double ln_beta_kernel(double x, double y, double a, double b) {
  if (x == 0.0) return a > 0.0 ? -kInf : 0.0;
  if (y == 0.0) return b > 0.0 ? -kInf : 0.0;
  if (std::max(a, b) < kStirlingThreshold) {
    return a * std::log(x) + b * std::log(y) - ln_beta(a, b);
  }
  // Deviance form: insensitive to rounding of the mode a/(a+b). The last
  // term is s (x + y - 1), formed exactly when x and y are complements.
  const double s = a + b;
  const double excess = x >= 0.5 ? (x - 1.0) + y : (y - 1.0) + x;
  return -poisson_deviance(a, s * x) - poisson_deviance(b, s * y) + s * excess +
         0.5 * std::log(a * b / (2.0 * std::numbers::pi * s)) + stirling_correction(s) -
         stirling_correction(a) - stirling_correction(b);
}

std::pair<double, double> reg_inc_beta_pair(double x, double y, double a, double b) {
  require_positive(a, "a", "reg_inc_beta");
  require_positive(b, "b", "reg_inc_beta");
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0))
    throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return {0.0, 1.0};
  if (y == 0.0) return {1.0, 0.0};
  if (x > (a + 1.0) / (a + b + 2.0)) {
    const double front = std::exp(ln_beta_kernel(y, x, b, a)) / b;
    const double upper = std::min(1.0, front * beta_continued_fraction(y, b, a));
    return {1.0 - upper, upper};
  }
  const double front = std::exp(ln_beta_kernel(x, y, a, b)) / a;
  const double lower = std::min(1.0, front * beta_continued_fraction(x, a, b));
  return {lower, 1.0 - lower};
}

double reg_inc_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  return reg_inc_beta_pair(x, 1.0 - x, a, b).first;
}

double ln_pochhammer_rising(double x, double q) {
  require_positive(x, "x", "pochhammer_rising");
  const double xq = x + q;
  if (!(xq > 0.0)) throw DomainError("ln_pochhammer_rising: x + q must be > 0");
  if (q == 0.0) return 0.0;
  if (x >= 10.0 && xq >= 10.0) {
    return (x - 0.5) * std::log1p(q / x) + q * std::log(xq) - q + stirling_correction(xq) -
           stirling_correction(x);
  }
  return ln_gamma(xq) - ln_gamma(x);
}

MomentValue pochhammer_rising(double x, double q) {
  require_positive(x, "x", "pochhammer_rising");
  if (!std::isfinite(q)) throw DomainError("pochhammer_rising: q must be finite");
  if (x + q <= 0.0) return MomentValue::infinite();
  return MomentValue::finite(std::exp(ln_pochhammer_rising(x, q)));
}

MomentValue beta_density(double x, double a, double b) {
  require_positive(a, "a", "beta_density");
  require_positive(b, "b", "beta_density");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta_density: x must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) {
    const double edge_shape = x == 0.0 ? a : b;
    if (edge_shape < 1.0) return MomentValue::infinite();
    if (edge_shape > 1.0) return MomentValue::finite(0.0);
    // x^0 (1-x)^(other-1) at the edge equals 1.
    return MomentValue::finite(std::exp(-ln_beta(a, b)));
  }
  const double y = 1.0 - x;
  return MomentValue::finite(
      std::exp(ln_beta_kernel(x, y, a, b) - std::log(x) - std::log1p(-x)));
}

double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const QuadratureSpec& spec) {
  if (!(a > 0.0) || !(c > a))
    throw DomainError("appell_f1: Euler integral requires c > a > 0");
  if (!(x <= 1.0) || !(y <= 1.0))
    throw DomainError("appell_f1: x and y must be <= 1 (singular integrand)");
  // Exponent of (1 - t) at t = 1 after collecting unit-argument factors.
  double edge_exponent = c - a - 1.0;
  if (x == 1.0) edge_exponent -= b1;
  if (y == 1.0) edge_exponent -= b2;
  if (!(edge_exponent > -1.0))
    throw DomainError("appell_f1: integrand not integrable at t = 1");

  if (x == 0.0 && y == 0.0) return 1.0;
  const double log_prefactor = -ln_beta(a, c - a);
  auto integrand = [&](double t) {
    const double omt = 1.0 - t;
    double v = std::pow(t, a - 1.0) * std::pow(omt, c - a - 1.0);
    if (b1 != 0.0) v *= std::pow(x == 1.0 ? omt : 1.0 - x * t, -b1);
    if (b2 != 0.0) v *= std::pow(y == 1.0 ? omt : 1.0 - y * t, -b2);
    return v;
  };
  const QuadratureResult r = integrate(integrand, 0.0, 1.0, spec);
  if (!r.converged || !std::isfinite(r.value))
    throw ConvergenceError("appell_f1: quadrature did not converge");
  return std::exp(log_prefactor) * r.value;
}

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double ln_poisson_pmf(std::int64_t k, double mean) {
  if (k < 0) return -kInf;
  if (!(mean >= 0.0)) throw DomainError("ln_poisson_pmf: mean must be >= 0");
  if (mean == 0.0) return k == 0 ? 0.0 : -kInf;
  if (k == 0) return -mean;
  const double kd = static_cast<double>(k);
  return -stirling_correction(kd) - poisson_deviance(kd, mean) -
         0.5 * std::log(2.0 * std::numbers::pi * kd);
}

double ln_poisson_tail_ge(std::int64_t m, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw DomainError("ln_poisson_tail_ge: mean must be finite and >= 0");
  if (m <= 0) return 0.0;
  if (mean == 0.0) return -kInf;
  if (mean < static_cast<double>(m)) {
    // Upper tail: terms decrease geometrically beyond m.
    const double lead = ln_poisson_pmf(m, mean);
    double term = 1.0;
    double sum = 1.0;
    for (std::int64_t k = m + 1;; ++k) {
      term *= mean / static_cast<double>(k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return lead + std::log(sum);
  }
  // Lower tail Pr(X < m) is at most about one half here.
  const double lead = ln_poisson_pmf(m - 1, mean);
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t k = m - 1; k > 0; --k) {
    term *= static_cast<double>(k) / mean;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::log1p(-std::exp(lead + std::log(sum)));
}

}  // namespace bppdist::specfun
