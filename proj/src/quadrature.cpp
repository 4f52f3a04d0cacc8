// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Adaptive double-exponential (tanh-sinh) quadrature.
//
// Each panel is integrated by successive tanh-sinh level refinement; panels
// whose level-to-level change stays above tolerance are bisected, largest
// error first. Abscissae are stored as distances from the nearest endpoint so
// that integrable endpoint singularities are sampled without cancellation.
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "bppdist/errors.hpp"
#include "bppdist/specfun.hpp"

namespace bppdist::specfun {
namespace {

constexpr int kMaxLevel = 7;
constexpr int kMinLevel = 3;
constexpr std::size_t kMaxEvaluations = 20'000'000;

struct Node {
  double complement;  // 1 - |x| on the reference interval [-1, 1]
  double weight;
};

// Nodes at t = k h for k >= 1 with h = 2^-level; level 0 holds all k, higher
// levels only the odd multiples.
struct NodeTable {
  std::array<std::vector<Node>, kMaxLevel + 1> levels;

  NodeTable() {
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    for (int level = 0; level <= kMaxLevel; ++level) {
      const double h = std::ldexp(1.0, -level);
      const int step = level == 0 ? 1 : 2;
      for (int k = 1;; k += step) {
        const double t = k * h;
        const double u = kHalfPi * std::sinh(t);
        const double complement = 2.0 / (std::exp(2.0 * u) + 1.0);
        if (!(complement > 1e-300)) break;
        const double weight = kHalfPi * std::cosh(t) * complement * (2.0 - complement);
        levels[level].push_back({complement, weight});
      }
    }
  }
};

const NodeTable& node_table() {
  static const NodeTable table;
  return table;
}

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
};

struct PanelOrder {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

Panel evaluate_panel(const Integrand& f, double lo, double hi, int depth,
                     const QuadratureSpec& spec, std::size_t& evaluations) {
  const NodeTable& table = node_table();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  auto pair_sum = [&](const std::vector<Node>& nodes) {
    double s = 0.0;
    for (const Node& node : nodes) {
      const double offset = half * node.complement;
      const double left = lo + offset;
      const double right = hi - offset;
      double fs = 0.0;
      if (left > lo) fs += f(left);
      if (right < hi) fs += f(right);
      evaluations += 2;
      s += node.weight * fs;
    }
    return s;
  };

  double sum = (std::numbers::pi / 2.0) * f(mid) + pair_sum(table.levels[0]);
  evaluations += 1;
  double estimate = half * sum;
  double error = std::fabs(estimate);
  for (int level = 1; level <= kMaxLevel; ++level) {
    sum += pair_sum(table.levels[level]);
    const double next = half * sum * std::ldexp(1.0, -level);
    error = std::fabs(next - estimate);
    estimate = next;
    if (level >= kMinLevel &&
        (error <= 0.1 * std::max(spec.abs_tol, spec.rel_tol * std::fabs(estimate)) ||
         error <= 1e-15 * std::fabs(estimate))) {
      break;
    }
  }
  if (!std::isfinite(estimate)) error = std::numeric_limits<double>::infinity();
  return {lo, hi, estimate, error, depth};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
  if (max_depth < 1) throw DomainError("QuadratureSpec: max_depth must be >= 1");
}

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integrate: requires finite lo < hi");

  std::size_t evaluations = 0;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> open;
  std::vector<Panel> settled;  // panels at max depth
  open.push(evaluate_panel(f, lo, hi, 0, spec, evaluations));

  auto totals = [&] {
    // Sum in a fixed order so the result does not depend on heap layout.
    std::vector<Panel> all = settled;
    while (!open.empty()) {
      all.push_back(open.top());
      open.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double value = 0.0;
    double error = 0.0;
    for (const Panel& p : all) {
      value += p.value;
      error += p.error;
    }
    return std::pair{value, error};
  };

  double value = open.top().value;
  double error = open.top().error;
  bool converged = false;
  while (true) {
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value))) {
      converged = std::isfinite(value);
      break;
    }
    if (open.empty() || evaluations > kMaxEvaluations || !std::isfinite(error)) break;
    const Panel worst = open.top();
    open.pop();
    const double split = 0.5 * (worst.lo + worst.hi);
    if (worst.depth >= spec.max_depth || !(split > worst.lo && split < worst.hi)) {
      settled.push_back(worst);
      continue;
    }
    const Panel left = evaluate_panel(f, worst.lo, split, worst.depth + 1, spec, evaluations);
    const Panel right = evaluate_panel(f, split, worst.hi, worst.depth + 1, spec, evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }
  std::tie(value, error) = totals();
  return {value, error, converged, evaluations};
}

QuadratureResult integrate_to_infinity(const Integrand& f, double lo,
                                       const QuadratureSpec& spec) {
  if (!std::isfinite(lo)) throw DomainError("integrate_to_infinity: lo must be finite");
  auto mapped = [&](double u) {
    const double omu = 1.0 - u;
    if (omu <= 0.0) return 0.0;
    const double x = lo + u / omu;
    if (!std::isfinite(x)) return 0.0;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx / (omu * omu);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

double integrate_checked(const Integrand& f, double lo, double hi,
                         const QuadratureSpec& spec) {
  const QuadratureResult r = integrate(f, lo, hi, spec);
  if (!r.converged) {
    throw ConvergenceError("integrate: no convergence on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "], error estimate " +
                           std::to_string(r.error));
  }
  return r.value;
}

}  // namespace bppdist::specfun
