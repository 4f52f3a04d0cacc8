// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <string>

#include "bppdist/conditional.hpp"
#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/geometry.hpp"
#include "bppdist/metrics.hpp"
#include "bppdist/montecarlo.hpp"
#include "bppdist/validation.hpp"

namespace py = pybind11;
using namespace bppdist;

namespace {

NthNeighborQuery rank_query(int d, double radius, std::int64_t nodes, std::int64_t n) {
  return NthNeighborQuery(NetworkSpec(d, radius, nodes), n);
}

MetricConfig metric_config(double p, double alpha, double n0, double theta,
                           const std::string& pathloss) {
  MetricConfig cfg;
  cfg.p = p;
  cfg.alpha = alpha;
  cfg.n0 = n0;
  cfg.theta = theta;
  cfg.pathloss = parse_path_loss(pathloss);
  cfg.validate();
  return cfg;
}

mc::SimConfig sim_config(std::uint64_t seed, std::int64_t trials, int workers) {
  mc::SimConfig sim;
  sim.seed = seed;
  sim.trials = trials;
  sim.workers = workers;
  sim.validate();
  return sim;
}

py::dict summary_dict(const mc::EmpiricalSummary& s) {
  py::dict out;
  out["count"] = s.count;
  out["mean"] = s.mean;
  out["variance"] = s.variance;
  out["standard_error"] = s.standard_error();
  out["ks_statistic"] = s.ks_statistic;
  out["trimmed_mean"] = s.trimmed_mean;
  out["seed"] = s.seed;
  return out;
}

}  // namespace

PYBIND11_MODULE(_bppdist, m) {
  m.doc() = "Distance distributions in finite binomial networks";
  m.attr("__version__") = BPPDIST_VERSION;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  m.def("unit_ball_volume", &unit_ball_volume, py::arg("d"));
  m.def(
      "density",
      [](int d, double radius, std::int64_t nodes) {
        return density(NetworkSpec(d, radius, nodes));
      },
      py::arg("d"), py::arg("R"), py::arg("N"));

  // Rank-n distance law.
  m.def(
      "pdf",
      [](int d, double radius, std::int64_t nodes, std::int64_t n, double r) {
        return pdf_rn(rank_query(d, radius, nodes, n), r);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("r"));
  m.def(
      "cdf",
      [](int d, double radius, std::int64_t nodes, std::int64_t n, double r) {
        return cdf_rn(rank_query(d, radius, nodes, n), r);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("r"));
  m.def(
      "ccdf",
      [](int d, double radius, std::int64_t nodes, std::int64_t n, double r) {
        return ccdf_rn(rank_query(d, radius, nodes, n), r);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("r"));
  m.def(
      "quantile",
      [](int d, double radius, std::int64_t nodes, std::int64_t n, double u) {
        return quantile_rn(rank_query(d, radius, nodes, n), u);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("u"));
  m.def(
      "moment",
      [](int d, double radius, std::int64_t nodes, std::int64_t n, double gamma) {
        return moment_rn(rank_query(d, radius, nodes, n), gamma).as_double();
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("gamma"),
      "E[R_n^gamma]; math.inf when n + gamma/d <= 0.");
  m.def(
      "variance",
      [](int d, double radius, std::int64_t nodes, std::int64_t n) {
        return variance_rn(rank_query(d, radius, nodes, n));
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"));

  // Conditioned and unconditioned Poisson laws.
  m.def(
      "cond_ppp_pdf",
      [](double lambda, int d, double radius, std::int64_t nodes, std::int64_t n, double r) {
        return conditioned_ppp_pdf(ConditionedPppQuery(lambda, d, radius, nodes, n), r);
      },
      py::arg("lam"), py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("r"));
  m.def(
      "cond_ppp_cdf",
      [](double lambda, int d, double radius, std::int64_t nodes, std::int64_t n, double r) {
        return conditioned_ppp_cdf(ConditionedPppQuery(lambda, d, radius, nodes, n), r);
      },
      py::arg("lam"), py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("r"));
  m.def("ppp_limit_pdf", &ppp_limit_pdf, py::arg("lam"), py::arg("d"), py::arg("n"),
        py::arg("r"));
  m.def("ppp_limit_ccdf", &ppp_limit_ccdf, py::arg("lam"), py::arg("d"), py::arg("n"),
        py::arg("r"));

  // Laws given R_k = s.
  m.def(
      "cond_pdf",
      [](int d, double radius, std::int64_t nodes, std::int64_t k, double s, std::int64_t n,
         double r) {
        return cond_pdf(NetworkSpec(d, radius, nodes), BeaconCondition{k, s}, n, r);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("k"), py::arg("s"), py::arg("n"),
      py::arg("r"));
  m.def(
      "cond_cdf",
      [](int d, double radius, std::int64_t nodes, std::int64_t k, double s, std::int64_t n,
         double r) {
        return cond_cdf(NetworkSpec(d, radius, nodes), BeaconCondition{k, s}, n, r);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("k"), py::arg("s"), py::arg("n"),
      py::arg("r"));
  m.def(
      "cond_moment",
      [](int d, double radius, std::int64_t nodes, std::int64_t k, double s, std::int64_t n,
         double gamma) {
        return cond_moment(NetworkSpec(d, radius, nodes), BeaconCondition{k, s}, n, gamma)
            .as_double();
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("k"), py::arg("s"), py::arg("n"),
      py::arg("gamma"));

  // Network metrics.
  m.def(
      "mean_interference",
      [](int d, double radius, std::int64_t nodes, double p, double alpha,
         const std::string& pathloss) {
        return mean_interference(NetworkSpec(d, radius, nodes),
                                 metric_config(p, alpha, 0.0, 1.0, pathloss))
            .as_double();
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("p"), py::arg("alpha"),
      py::arg("pathloss") = "singular");
  m.def(
      "connectivity",
      [](int d, double radius, std::int64_t nodes, std::int64_t n, double alpha, double n0,
         double theta) {
        return connectivity_prob(NetworkSpec(d, radius, nodes),
                                 metric_config(1.0, alpha, n0, theta, "singular"), n);
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("n"), py::arg("alpha"), py::arg("n0"),
      py::arg("theta"));
  m.def(
      "outage_lower_bound",
      [](int d, double radius, std::int64_t nodes, double p, double alpha, double theta) {
        return outage_lower_bound(NetworkSpec(d, radius, nodes),
                                  metric_config(p, alpha, 0.0, theta, "singular"));
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("p"), py::arg("alpha"),
      py::arg("theta"));

  // Simulation.
  m.def(
      "sample_distances",
      [](int d, double radius, std::int64_t nodes, std::uint64_t seed, std::int64_t trials,
         int workers) {
        const auto mat =
            mc::sample_bpp_distances(NetworkSpec(d, radius, nodes), sim_config(seed, trials, workers));
        py::array_t<double> out({mat.trials(), mat.nodes()});
        auto view = out.mutable_unchecked<2>();
        for (std::int64_t t = 0; t < mat.trials(); ++t) {
          const auto row = mat.row(t);
          std::copy(row.begin(), row.end(), view.mutable_data(t, 0));
        }
        return out;
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("seed"), py::arg("trials"),
      py::arg("workers") = 1, "trials x N array; each row holds sorted node distances.");
  m.def(
      "simulate_interference",
      [](int d, double radius, std::int64_t nodes, double p, double alpha, std::uint64_t seed,
         std::int64_t trials, int workers, const std::string& pathloss) {
        return summary_dict(mc::simulate_interference(
            NetworkSpec(d, radius, nodes), metric_config(p, alpha, 0.0, 1.0, pathloss),
            sim_config(seed, trials, workers)));
      },
      py::arg("d"), py::arg("R"), py::arg("N"), py::arg("p"), py::arg("alpha"),
      py::arg("seed"), py::arg("trials"), py::arg("workers") = 1,
      py::arg("pathloss") = "singular");
  m.def(
      "validate",
      [](const std::string& suite, std::uint64_t seed, std::int64_t trials, int workers) {
        const ValidationReport report =
            run_validation(parse_suite(suite), sim_config(seed, trials, workers));
        py::list rows;
        for (const CheckResult& c : report.checks) {
          py::dict row;
          row["check"] = c.name;
          row["statistic"] = c.statistic;
          row["threshold"] = c.threshold;
          row["passed"] = c.passed;
          rows.append(row);
        }
        return py::make_tuple(report.passed(), rows);
      },
      py::arg("suite") = "all", py::arg("seed") = 0, py::arg("trials") = 100'000,
      py::arg("workers") = 1, "Returns (all_passed, [check rows]).");
}
