// Copyright 2026 The bppdist Authors.
// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "bppdist/conditional.hpp"
#include "bppdist/distance.hpp"
#include "bppdist/errors.hpp"
#include "bppdist/law.hpp"
#include "bppdist/metrics.hpp"
#include "bppdist/montecarlo.hpp"
#include "bppdist/table.hpp"
#include "bppdist/validation.hpp"

namespace bppdist::cli {
namespace {

constexpr std::int64_t kDefaultTrials = 100'000;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string invocation;
  std::string format = "csv";
};

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void stamp(OutputTable& table, const Context& ctx, const std::string& command,
           bool with_time = true) {
  table.set_metadata("command", command);
  table.set_metadata("version", BPPDIST_VERSION);
  table.set_metadata("invocation", ctx.invocation);
  if (with_time) table.set_metadata("timestamp", timestamp_utc());
}

void emit(const OutputTable& table, const Context& ctx, std::ostream& out) {
  out << (ctx.format == "json" ? table.to_json() : table.to_csv());
}

Cell moment_cell(const MomentValue& m) { return m.as_double(); }

template <class T>
T require(const std::optional<T>& v, const char* flag, const std::string& why) {
  if (!v) throw UsageError(std::string(flag) + " is required " + why);
  return *v;
}

int resolve_workers(const std::optional<int>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("BPPDIST_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    throw UsageError(std::string("BPPDIST_WORKERS must be a positive integer, got '") + env +
                     "'");
  return static_cast<int>(v);
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[i] = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
  }
  return grid;
}

// dist ------------------------------------------------------------------

struct DistArgs {
  int d = 0;
  std::optional<double> R;
  std::optional<std::int64_t> N;
  std::int64_t n = 0;
  std::string law = "bpp";
  std::optional<double> lambda;
  int grid = 100;
  std::optional<double> rmax;
};

OutputTable cmd_dist(const DistArgs& a, const Context& ctx) {
  std::optional<DistanceLaw> law;
  if (a.law == "bpp") {
    const NetworkSpec spec(a.d, require(a.R, "--R", "for --law bpp"),
                           require(a.N, "--N", "for --law bpp"));
    law = BppNeighborLaw{NthNeighborQuery(spec, a.n)};
  } else if (a.law == "cond-ppp") {
    law = ConditionedPppNeighborLaw{ConditionedPppQuery(
        require(a.lambda, "--lambda", "for --law cond-ppp"), a.d,
        require(a.R, "--R", "for --law cond-ppp"), require(a.N, "--N", "for --law cond-ppp"),
        a.n)};
  } else {
    const double lambda = require(a.lambda, "--lambda", "for --law ppp-limit");
    if (!(lambda > 0.0) || a.d < 1 || a.n < 1)
      throw DomainError("ppp-limit requires --lambda > 0, --d >= 1, --n >= 1");
    law = PppLimitNeighborLaw{lambda, a.d, a.n};
  }
  Support sup = support(*law);
  if (std::isinf(sup.hi)) sup.hi = a.rmax ? *a.rmax : quantile(*law, 1.0 - 1e-6);
  if (!(sup.hi > sup.lo)) throw DomainError("--rmax must be > 0");

  OutputTable table({"r", "pdf", "cdf", "ccdf"});
  for (double r : linear_grid(sup.lo, sup.hi, a.grid))
    table.add_row({r, pdf(*law, r), cdf(*law, r), ccdf(*law, r)});
  stamp(table, ctx, "dist");
  table.set_metadata("law", a.law);
  return table;
}

// moments ---------------------------------------------------------------

struct MomentArgs {
  int d = 0;
  double R = 0.0;
  std::int64_t N = 0;
  double gamma = 1.0;
  std::optional<std::int64_t> n;
  bool all_n = false;
  std::optional<std::string> internodal;
};

OutputTable cmd_moments(const MomentArgs& a, const Context& ctx) {
  const NetworkSpec spec(a.d, a.R, a.N);
  const int selectors = (a.n ? 1 : 0) + (a.all_n ? 1 : 0) + (a.internodal ? 1 : 0);
  if (selectors != 1) throw UsageError("give exactly one of --n, --all-n, --internodal");
  if (a.internodal) {
    const auto comma = a.internodal->find(',');
    if (comma == std::string::npos) throw UsageError("--internodal expects i,j");
    std::int64_t i = 0;
    std::int64_t j = 0;
    try {
      i = std::stoll(a.internodal->substr(0, comma));
      j = std::stoll(a.internodal->substr(comma + 1));
    } catch (const std::exception&) {
      throw UsageError("--internodal expects two integers i,j");
    }
    OutputTable table({"i", "j", "mean_internodal"});
    table.add_row({static_cast<double>(i), static_cast<double>(j), mean_internodal(spec, i, j)});
    stamp(table, ctx, "moments");
    return table;
  }
  OutputTable table({"n", "moment", "mean", "variance"});
  const std::int64_t first = a.all_n ? 1 : *a.n;
  const std::int64_t last = a.all_n ? spec.nodes() : *a.n;
  for (std::int64_t n = first; n <= last; ++n) {
    const NthNeighborQuery q(spec, n);
    table.add_row({static_cast<double>(n), moment_cell(moment_rn(q, a.gamma)), mean_rn(q),
                   variance_rn(q)});
  }
  stamp(table, ctx, "moments");
  table.set_metadata("gamma", format_number(a.gamma));
  return table;
}

// conditional -----------------------------------------------------------

struct ConditionalArgs {
  int d = 0;
  double R = 0.0;
  std::int64_t N = 0;
  std::int64_t k = 0;
  double s = 0.0;
  std::int64_t n = 0;
  int grid = 100;
  bool moment = false;
  double gamma = 1.0;
};

OutputTable cmd_conditional(const ConditionalArgs& a, const Context& ctx) {
  const NetworkSpec spec(a.d, a.R, a.N);
  const BeaconCondition cond{a.k, a.s};
  cond.validate(spec);
  if (a.n == a.k)
    throw DomainError("degenerate case n = k: R_k is fixed at s by the condition");
  if (a.n < 1 || a.n > spec.nodes()) throw DomainError("--n must satisfy 1 <= n <= N");
  if (a.moment) {
    const ConditionalMomentReport rep = cond_moment_report(spec, cond, a.n, a.gamma);
    OutputTable table({"quantity", "value"});
    table.add_row({std::string("quadrature"), moment_cell(rep.quadrature)});
    table.add_row({std::string("closed-form-k+1-denominator"), moment_cell(*rep.k_plus_one_closed_form)});
    table.add_row(
        {std::string("closed-form-k-denominator"), moment_cell(*rep.k_closed_form)});
    stamp(table, ctx, "conditional");
    table.set_metadata("branch", rep.inner_branch ? "inner" : "outer");
    table.set_metadata("gamma", format_number(a.gamma));
    return table;
  }
  const DistanceLaw law = BeaconConditionalLaw{spec, cond, a.n};
  const Support sup = support(law);
  OutputTable table({"r", "pdf", "cdf"});
  for (double r : linear_grid(sup.lo, sup.hi, a.grid))
    table.add_row({r, pdf(law, r), cdf(law, r)});
  stamp(table, ctx, "conditional");
  table.set_metadata("branch", a.n < a.k ? "inner" : "outer");
  return table;
}

// metrics ---------------------------------------------------------------

struct MetricArgs {
  std::string metric;
  int d = 0;
  double R = 0.0;
  std::int64_t N = 0;
  MetricConfig cfg;
  std::string pathloss = "singular";
  std::optional<std::int64_t> n;
  bool all_n = false;
  std::optional<std::string> theta_grid;
  bool simulate = false;
  std::optional<std::uint64_t> seed;
  std::int64_t trials = kDefaultTrials;
  std::optional<int> workers;
};

mc::SimConfig sim_config(const MetricArgs& a) {
  mc::SimConfig sim;
  sim.seed = require(a.seed, "--seed", "with --simulate");
  sim.trials = a.trials;
  sim.workers = resolve_workers(a.workers);
  sim.validate();
  return sim;
}

std::vector<std::int64_t> ranks(const MetricArgs& a, const NetworkSpec& spec) {
  if (a.all_n == a.n.has_value()) throw UsageError("give exactly one of --n, --all-n");
  std::vector<std::int64_t> out;
  if (a.all_n) {
    for (std::int64_t n = 1; n <= spec.nodes(); ++n) out.push_back(n);
  } else {
    out.push_back(*a.n);
  }
  return out;
}

OutputTable cmd_metrics(MetricArgs a, const Context& ctx) {
  const NetworkSpec spec(a.d, a.R, a.N);
  a.cfg.pathloss = parse_path_loss(a.pathloss);
  a.cfg.validate();
  if (a.cfg.pathloss == PathLoss::bounded && !(spec.radius() > 1.0))
    throw DomainError("the bounded path-loss law requires --R > 1");
  const std::vector<double> thetas =
      a.theta_grid ? parse_log_grid(*a.theta_grid) : std::vector<double>{a.cfg.theta};
  std::optional<mc::SimConfig> sim;
  if (a.simulate) sim = sim_config(a);

  std::optional<OutputTable> table;
  if (a.metric == "energy") {
    table.emplace(std::vector<std::string>{"n", "energy"});
    for (std::int64_t n : ranks(a, spec))
      table->add_row({static_cast<double>(n), moment_cell(mean_hop_energy(spec, n, a.cfg.alpha))});
  } else if (a.metric == "interference") {
    const Cell exact = moment_cell(mean_interference(spec, a.cfg));
    if (sim) {
      const auto s = mc::simulate_interference(spec, a.cfg, *sim);
      table.emplace(std::vector<std::string>{"mean_interference", "empirical_mean",
                                             "trimmed_mean", "standard_error"});
      table->add_row({exact, s.mean, *s.trimmed_mean, s.standard_error()});
    } else {
      table.emplace(std::vector<std::string>{"mean_interference"});
      table->add_row({exact});
    }
  } else if (a.metric == "connectivity") {
    std::vector<std::string> cols{"theta", "n", "connectivity"};
    if (sim) {
      cols.push_back("empirical");
      cols.push_back("standard_error");
    }
    table.emplace(cols);
    const auto ns = ranks(a, spec);
    for (double theta : thetas) {
      MetricConfig cfg = a.cfg;
      cfg.theta = theta;
      for (std::int64_t n : ns) {
        std::vector<Cell> row{theta, static_cast<double>(n), connectivity_prob(spec, cfg, n)};
        if (sim) {
          const auto s = mc::simulate_connectivity(spec, cfg, n, *sim);
          row.emplace_back(s.mean);
          row.emplace_back(s.standard_error());
        }
        table->add_row(std::move(row));
      }
    }
  } else {
    std::vector<std::string> cols{"theta", "outage_lower_bound", "success_upper_bound"};
    std::vector<mc::EmpiricalSummary> sweep;
    if (sim) {
      for (const char* c : {"empirical_outage", "empirical_success", "standard_error"})
        cols.emplace_back(c);
      sweep = mc::simulate_outage_sweep(spec, a.cfg, thetas, *sim);
    }
    table.emplace(cols);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      MetricConfig cfg = a.cfg;
      cfg.theta = thetas[i];
      const double bound = outage_lower_bound(spec, cfg);
      std::vector<Cell> row{thetas[i], bound, 1.0 - bound};
      if (sim) {
        row.emplace_back(sweep[i].mean);
        row.emplace_back(1.0 - sweep[i].mean);
        row.emplace_back(sweep[i].standard_error());
      }
      table->add_row(std::move(row));
    }
  }
  stamp(*table, ctx, "metrics");
  table->set_metadata("metric", a.metric);
  table->set_metadata("pathloss", std::string(to_string(a.cfg.pathloss)));
  if (sim) {
    table->set_metadata("seed", std::to_string(sim->seed));
    table->set_metadata("trials", std::to_string(sim->trials));
    table->set_metadata("workers", std::to_string(sim->workers));
  }
  return *table;
}

// validate --------------------------------------------------------------

struct ValidateArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::int64_t trials = kDefaultTrials;
  std::optional<int> workers;
};

std::string_view rule(Comparison c) {
  switch (c) {
    case Comparison::at_most:
      return "<=";
    case Comparison::at_least:
      return ">=";
    case Comparison::report:
      return "info";
  }
  return "?";
}

int cmd_validate(const ValidateArgs& a, const Context& ctx, std::ostream& out,
                 std::ostream& err) {
  mc::SimConfig sim;
  sim.seed = a.seed;
  sim.trials = a.trials;
  sim.workers = resolve_workers(a.workers);
  sim.validate();
  const Suite suite = parse_suite(a.suite);
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport report = run_validation(suite, sim);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  OutputTable table({"check", "statistic", "rule", "threshold", "result"});
  for (const CheckResult& c : report.checks) {
    const char* result = c.comparison == Comparison::report ? "info"
                         : c.passed                         ? "pass"
                                                            : "fail";
    table.add_row({c.name, c.statistic, std::string(rule(c.comparison)), c.threshold,
                   std::string(result)});
  }
  // No timestamp: identical inputs must give byte-identical reports.
  stamp(table, ctx, "validate", false);
  table.set_metadata("suite", std::string(to_string(suite)));
  table.set_metadata("seed", std::to_string(sim.seed));
  table.set_metadata("trials", std::to_string(sim.trials));
  table.set_metadata("workers", std::to_string(sim.workers));
  table.set_metadata("status", report.passed() ? "pass" : "fail");
  emit(table, ctx, out);
  if (sim.trials < kUnderpoweredTrials) {
    err << "warning: " << sim.trials << " trials is underpowered; thresholds widened by "
        << format_number(threshold_widening(sim.trials)) << "\n";
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
  err << "validate: " << report.checks.size() << " checks, " << failed << " failed, "
      << format_number(std::round(elapsed * 100.0) / 100.0) << " s\n";
  return report.passed() ? kExitOk : kExitValidationFailed;
}

void add_format(CLI::App* sub, Context& ctx) {
  sub->add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

std::vector<double> parse_log_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) throw UsageError("grid must look like lo:hi:count");
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(text.substr(0, first), &used);
    if (used != first) throw std::invalid_argument("lo");
    const std::string hi_text = text.substr(first + 1, second - first - 1);
    hi = std::stod(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument("hi");
    const std::string count_text = text.substr(second + 1);
    count = std::stol(count_text, &used);
    if (used != count_text.size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError("grid must look like lo:hi:count, got '" + text + "'");
  }
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || count < 1 || count > 1'000'000)
    throw UsageError("grid needs 0 < lo <= hi and 1 <= count, got '" + text + "'");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = count > 1 ? std::log(hi / lo) / static_cast<double>(count - 1) : 0.0;
  for (long i = 0; i < count; ++i)
    grid[i] = i + 1 == count ? hi : lo * std::exp(step * static_cast<double>(i));
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.invocation = "bppdist";
  for (const auto& a : args) ctx.invocation += " " + a;

  CLI::App app{"Distance distributions and metrics for finite binomial networks", "bppdist"};
  app.set_version_flag("--version", BPPDIST_VERSION);
  app.require_subcommand(1);

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "pdf/cdf/ccdf table of the n-th neighbour distance");
  dist_cmd->add_option("--d", dist.d, "Dimension")->required()->check(CLI::PositiveNumber);
  dist_cmd->add_option("--R", dist.R, "Window radius");
  dist_cmd->add_option("--N", dist.N, "Number of nodes (bpp) or minimum count (cond-ppp)");
  dist_cmd->add_option("--n", dist.n, "Neighbour rank")->required();
  dist_cmd->add_option("--law", dist.law, "bpp, cond-ppp or ppp-limit")
      ->check(CLI::IsMember({"bpp", "cond-ppp", "ppp-limit"}))
      ->capture_default_str();
  dist_cmd->add_option("--lambda", dist.lambda, "PPP intensity");
  dist_cmd->add_option("--grid", dist.grid, "Grid points")
      ->check(CLI::Range(2, 10'000'000))
      ->capture_default_str();
  dist_cmd->add_option("--rmax", dist.rmax, "Grid end for ppp-limit (default: 1e-6 quantile)");
  add_format(dist_cmd, ctx);

  MomentArgs mom;
  auto* mom_cmd = app.add_subcommand("moments", "Distance moments, means and variances");
  mom_cmd->add_option("--d", mom.d)->required();
  mom_cmd->add_option("--R", mom.R)->required();
  mom_cmd->add_option("--N", mom.N)->required();
  mom_cmd->add_option("--gamma", mom.gamma, "Moment order")->capture_default_str();
  mom_cmd->add_option("--n", mom.n, "Neighbour rank");
  mom_cmd->add_flag("--all-n", mom.all_n, "All ranks 1..N");
  mom_cmd->add_option("--internodal", mom.internodal, "Mean E[R_j - R_i] for i,j");
  add_format(mom_cmd, ctx);

  ConditionalArgs cnd;
  auto* cnd_cmd =
      app.add_subcommand("conditional", "Law of R_n given that R_k = s (pdf table or moment)");
  cnd_cmd->add_option("--d", cnd.d)->required();
  cnd_cmd->add_option("--R", cnd.R)->required();
  cnd_cmd->add_option("--N", cnd.N)->required();
  cnd_cmd->add_option("--k", cnd.k, "Rank of the conditioning neighbour")->required();
  cnd_cmd->add_option("--s", cnd.s, "Its distance, 0 < s < R")->required();
  cnd_cmd->add_option("--n", cnd.n, "Rank of interest, n != k")->required();
  cnd_cmd->add_option("--grid", cnd.grid)->check(CLI::Range(2, 10'000'000))->capture_default_str();
  cnd_cmd->add_flag("--moment", cnd.moment, "Report E[R_n^gamma | R_k = s]");
  cnd_cmd->add_option("--gamma", cnd.gamma)->capture_default_str();
  add_format(cnd_cmd, ctx);

  MetricArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "Energy, interference, connectivity, outage");
  met_cmd->add_option("--metric", met.metric)
      ->required()
      ->check(CLI::IsMember({"energy", "interference", "connectivity", "outage-bound"}));
  met_cmd->add_option("--d", met.d)->required();
  met_cmd->add_option("--R", met.R)->required();
  met_cmd->add_option("--N", met.N)->required();
  met_cmd->add_option("--p", met.cfg.p, "ALOHA transmit probability")->capture_default_str();
  met_cmd->add_option("--alpha", met.cfg.alpha, "Path-loss exponent")->capture_default_str();
  met_cmd->add_option("--n0", met.cfg.n0, "Noise power")->capture_default_str();
  met_cmd->add_option("--theta", met.cfg.theta, "SINR threshold")->capture_default_str();
  met_cmd->add_option("--pathloss", met.pathloss)
      ->check(CLI::IsMember({"singular", "bounded"}))
      ->capture_default_str();
  met_cmd->add_option("--n", met.n, "Neighbour rank");
  met_cmd->add_flag("--all-n", met.all_n, "All ranks 1..N");
  met_cmd->add_option("--theta-grid", met.theta_grid, "Log-spaced thresholds lo:hi:count");
  met_cmd->add_flag("--simulate", met.simulate, "Add Monte Carlo columns (needs --seed)");
  met_cmd->add_option("--seed", met.seed);
  met_cmd->add_option("--trials", met.trials)->check(CLI::PositiveNumber)->capture_default_str();
  met_cmd->add_option("--workers", met.workers)->check(CLI::PositiveNumber);
  add_format(met_cmd, ctx);

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Monte Carlo validation of the analytic laws");
  val_cmd->add_option("--suite", val.suite)
      ->check(CLI::IsMember({"distances", "interference", "outage", "cond-ppp", "all"}))
      ->capture_default_str();
  val_cmd->add_option("--seed", val.seed)->required();
  val_cmd->add_option("--trials", val.trials)->check(CLI::PositiveNumber)->capture_default_str();
  val_cmd->add_option("--workers", val.workers)->check(CLI::PositiveNumber);
  add_format(val_cmd, ctx);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (val_cmd->parsed()) return cmd_validate(val, ctx, out, err);
    OutputTable table({"_"});
    if (dist_cmd->parsed()) {
      table = cmd_dist(dist, ctx);
    } else if (mom_cmd->parsed()) {
      table = cmd_moments(mom, ctx);
    } else if (cnd_cmd->parsed()) {
      table = cmd_conditional(cnd, ctx);
    } else {
      table = cmd_metrics(met, ctx);
    }
    emit(table, ctx, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace bppdist::cli
