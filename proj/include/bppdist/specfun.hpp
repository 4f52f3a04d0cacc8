// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>

#include "bppdist/moment_value.hpp"

/// Special-function kernel. Every distance law in the library reduces to
/// log-gamma, the regularized incomplete beta, rising factorials, Poisson
/// tails and one-dimensional quadrature.
namespace bppdist::specfun {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 60;  ///< maximum bisection depth of any panel

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error
  bool converged = false;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// ln B(a, b) for a, b > 0.
double ln_beta(double a, double b);

/// Stirling remainder: ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2].
double stirling_correction(double x);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double x, double a, double b);

/// {I_x(a,b), 1 - I_x(a,b)} where the caller supplies y = 1 - x computed
/// without cancellation. Whichever member is evaluated by continued
/// fraction keeps full relative accuracy.
std::pair<double, double> reg_inc_beta_pair(double x, double y, double a, double b);

/// ln[x^a y^b / B(a,b)] with y = 1 - x, accurate for large a and b.
double ln_beta_kernel(double x, double y, double a, double b);

/// ln[Gamma(x+q)/Gamma(x)], requires x > 0 and x + q > 0.
double ln_pochhammer_rising(double x, double q);

/// Rising factorial x^[q] = Gamma(x+q)/Gamma(x); infinite when x + q <= 0.
MomentValue pochhammer_rising(double x, double q);

/// Beta(a, b) density. Infinite at x = 0 when a < 1 and at x = 1 when b < 1.
MomentValue beta_density(double x, double a, double b);

/// Appell F1(a; b1, b2; c; x, y) by its Euler integral. Requires c > a > 0,
/// x <= 1, y <= 1 and an integrable endpoint when x or y equals 1.
double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const QuadratureSpec& spec = {});

/// Adaptive tanh-sinh quadrature over [lo, hi] with panel bisection.
/// Endpoint singularities are tolerated; the integrand is never evaluated
/// exactly at lo or hi.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// Integral over [lo, inf) via x = lo + u/(1-u).
QuadratureResult integrate_to_infinity(const Integrand& f, double lo,
                                       const QuadratureSpec& spec = {});

/// integrate() that throws ConvergenceError when not converged.
double integrate_checked(const Integrand& f, double lo, double hi,
                         const QuadratureSpec& spec = {});

/// ln Pr(X >= m) for X ~ Poisson(mean). Returns -inf when the probability
/// is exactly zero (mean = 0, m > 0).
double ln_poisson_tail_ge(std::int64_t m, double mean);

/// ln Pr(X = k) for X ~ Poisson(mean).
double ln_poisson_pmf(std::int64_t k, double mean);

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
double log_add_exp(double a, double b);

}  // namespace bppdist::specfun
