// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>

#include "bppdist/errors.hpp"

namespace bppdist {

/// A nonnegative quantity that is either finite or +infinity.
///
/// Divergent moments and density limits at singular endpoints are values,
/// not failures, so they are tagged explicitly instead of relying on
/// floating-point overflow.
class MomentValue {
 public:
  static constexpr MomentValue finite(double v) { return MomentValue(v, false); }
  static constexpr MomentValue infinite() { return MomentValue(0.0, true); }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  /// Throws DomainError on the infinite branch.
  double value() const {
    if (infinite_) throw DomainError("MomentValue: value() on infinite branch");
    return value_;
  }

  /// +inf as an IEEE double for the infinite branch.
  constexpr double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const MomentValue&, const MomentValue&) = default;

 private:
  constexpr MomentValue(double v, bool inf) : value_(v), infinite_(inf) {}

  double value_;
  bool infinite_;
};

}  // namespace bppdist
