// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bppdist/montecarlo.hpp"

namespace bppdist {

enum class Suite { distances, interference, outage, cond_ppp, all };

/// Accepts "distances", "interference", "outage", "cond-ppp", "all".
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

enum class Comparison {
  at_most,   ///< pass iff statistic <= threshold
  at_least,  ///< pass iff statistic >= threshold
  report,    ///< informational row, always passes
};

struct CheckResult {
  std::string name;
  double statistic;
  double threshold;
  Comparison comparison;
  bool passed;
};

CheckResult make_check(std::string name, double statistic, double threshold,
                       Comparison comparison = Comparison::at_most);

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Trial count below which statistical thresholds are widened.
inline constexpr std::int64_t kUnderpoweredTrials = 1000;

/// sqrt(kUnderpoweredTrials / trials) for trials below the limit, else 1.
double threshold_widening(std::int64_t trials);

/// Upper 1% point of chi-square with `dof` degrees of freedom
/// (Wilson-Hilferty approximation).
double chi_square_critical_1pct(int dof);

/// Runs the Monte Carlo oracles of `suite` against the analytic laws.
/// The interference suite uses 10 x sim.trials trials. Output depends only
/// on (suite, seed, trials, workers).
ValidationReport run_validation(Suite suite, const mc::SimConfig& sim);

}  // namespace bppdist
