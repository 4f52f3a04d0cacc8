// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "bppdist/law.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bppdist/errors.hpp"

namespace bppdist {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::string_view law_name(const DistanceLaw& law) {
  return std::visit(Overloaded{
                        [](const BppNeighborLaw&) { return "bpp"; },
                        [](const ConditionedPppNeighborLaw&) { return "cond-ppp"; },
                        [](const PppLimitNeighborLaw&) { return "ppp-limit"; },
                        [](const BeaconConditionalLaw&) { return "beacon"; },
                    },
                    law);
}

Support support(const DistanceLaw& law) {
  return std::visit(
      Overloaded{
          [](const BppNeighborLaw& l) { return Support{0.0, l.query.spec().radius()}; },
          [](const ConditionedPppNeighborLaw& l) { return Support{0.0, l.query.radius()}; },
          [](const PppLimitNeighborLaw&) {
            return Support{0.0, std::numeric_limits<double>::infinity()};
          },
          [](const BeaconConditionalLaw& l) {
            return l.rank < l.condition.rank ? Support{0.0, l.condition.distance}
                                             : Support{l.condition.distance, l.spec.radius()};
          },
      },
      law);
}

double pdf(const DistanceLaw& law, double r) {
  return std::visit(
      Overloaded{
          [r](const BppNeighborLaw& l) { return pdf_rn(l.query, r); },
          [r](const ConditionedPppNeighborLaw& l) { return conditioned_ppp_pdf(l.query, r); },
          [r](const PppLimitNeighborLaw& l) {
            return ppp_limit_pdf(l.lambda, l.dimension, l.rank, r);
          },
          [r](const BeaconConditionalLaw& l) { return cond_pdf(l.spec, l.condition, l.rank, r); },
      },
      law);
}

double cdf(const DistanceLaw& law, double r) {
  return std::visit(
      Overloaded{
          [r](const BppNeighborLaw& l) { return cdf_rn(l.query, r); },
          [r](const ConditionedPppNeighborLaw& l) { return conditioned_ppp_cdf(l.query, r); },
          [r](const PppLimitNeighborLaw& l) {
            return 1.0 - ppp_limit_ccdf(l.lambda, l.dimension, l.rank, r);
          },
          [r](const BeaconConditionalLaw& l) { return cond_cdf(l.spec, l.condition, l.rank, r); },
      },
      law);
}

double ccdf(const DistanceLaw& law, double r) {
  return std::visit(
      Overloaded{
          [r](const BppNeighborLaw& l) { return ccdf_rn(l.query, r); },
          [r](const ConditionedPppNeighborLaw& l) { return conditioned_ppp_ccdf(l.query, r); },
          [r](const PppLimitNeighborLaw& l) {
            return ppp_limit_ccdf(l.lambda, l.dimension, l.rank, r);
          },
          [r](const BeaconConditionalLaw& l) {
            return 1.0 - cond_cdf(l.spec, l.condition, l.rank, r);
          },
      },
      law);
}

double quantile(const DistanceLaw& law, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
  if (const auto* bpp = std::get_if<BppNeighborLaw>(&law)) return quantile_rn(bpp->query, u);
  const Support sup = support(law);
  double lo = sup.lo;
  double hi = sup.hi;
  if (std::isinf(hi)) {
    hi = 1.0;
    while (cdf(law, hi) < u) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw ConvergenceError("quantile: no finite upper bracket");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi;
       ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(law, mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r = 0.5 * (lo + hi);
  const double residual = cdf(law, r) - u;
  if (std::fabs(residual) > 1e-10)
    throw ConvergenceError("quantile: residual " + std::to_string(residual));
  return r;
}

double sample(const DistanceLaw& law, RandomStream& rng) {
  if (const auto* bpp = std::get_if<BppNeighborLaw>(&law)) return sample_rn(bpp->query, rng);
  return quantile(law, rng.uniform());
}

}  // namespace bppdist
