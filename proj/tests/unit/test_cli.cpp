#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bppdist/table.hpp"
#include "cli.hpp"
#include "doctest.h"

using bppdist::OutputTable;
using bppdist::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double num(std::size_t row, const std::string& col) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == col) return std::stod(rows.at(row).at(i));
    FAIL("missing column " << col);
    return 0.0;
  }
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) continue;
    if (csv.header.empty()) {
      csv.header = split(line, ',');
    } else {
      csv.rows.push_back(split(line, ','));
    }
  }
  return csv;
}

double trapezoid(const Csv& csv, const std::string& x, const std::string& y) {
  double total = 0.0;
  for (std::size_t i = 1; i < csv.rows.size(); ++i)
    total += 0.5 * (csv.num(i, y) + csv.num(i - 1, y)) * (csv.num(i, x) - csv.num(i - 1, x));
  return total;
}

}  // namespace

TEST_CASE("dist table for the binomial law") {
  const auto r =
      call({"dist", "--law", "bpp", "--d", "2", "--R", "1", "--N", "10", "--n", "3", "--grid", "200"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"r", "pdf", "cdf", "ccdf"});
  REQUIRE(csv.rows.size() == 200);
  CHECK(std::fabs(trapezoid(csv, "r", "pdf") - 1.0) <= 1e-3);
  CHECK(csv.num(0, "r") == 0.0);
  CHECK(csv.num(199, "r") == 1.0);
}

TEST_CASE("dist table for the infinite-PPP law is Rayleigh") {
  const auto r = call({"dist", "--law", "ppp-limit", "--d", "2", "--lambda", "1", "--n", "1"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 100);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double x = csv.num(i, "r");
    const double want = 2.0 * std::numbers::pi * x * std::exp(-std::numbers::pi * x * x);
    CHECK(std::fabs(csv.num(i, "pdf") - want) < 1e-12);
  }
}

TEST_CASE("dist rejects invalid flags with exit code 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"dist", "--d", "2", "--R", "1", "--N", "10", "--n", "11"},
           {"dist", "--d", "2", "--R", "-1", "--N", "10", "--n", "3"},
           {"dist", "--law", "cond-ppp", "--d", "2", "--R", "1", "--N", "10", "--n", "3"},
           {"dist", "--law", "ppp-limit", "--d", "2", "--n", "1"},
           {"dist", "--law", "gamma", "--d", "2", "--R", "1", "--N", "10", "--n", "3"},
           {"dist", "--d", "2", "--n", "1"},
       }) {
    const auto r = call(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("cond-ppp dist table normalizes") {
  const auto r = call({"dist", "--law", "cond-ppp", "--lambda", "3.18", "--d", "2", "--R", "1",
                       "--N", "10", "--n", "5", "--grid", "400"});
  REQUIRE(r.code == 0);
  CHECK(std::fabs(trapezoid(parse_csv(r.out), "r", "pdf") - 1.0) <= 1e-3);
}

TEST_CASE("moments command") {
  auto r = call({"moments", "--d", "1", "--R", "1", "--N", "5", "--gamma", "1", "--all-n"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::fabs(csv.num(i, "mean") - (i + 1) / 6.0) < 1e-12);

  r = call({"moments", "--d", "2", "--R", "1", "--N", "4", "--gamma", "-3", "--n", "1"});
  REQUIRE(r.code == 0);
  csv = parse_csv(r.out);
  CHECK(csv.rows.at(0).at(1) == "inf");

  r = call({"moments", "--internodal", "2,5", "--d", "1", "--N", "9", "--R", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::fabs(parse_csv(r.out).num(0, "mean_internodal") - 0.3) < 1e-12);

  CHECK(call({"moments", "--d", "1", "--R", "1", "--N", "5"}).code == 2);
  CHECK(call({"moments", "--d", "1", "--R", "1", "--N", "5", "--n", "1", "--all-n"}).code == 2);
  CHECK(call({"moments", "--internodal", "5", "--d", "1", "--N", "9", "--R", "1"}).code == 2);
}

TEST_CASE("conditional command") {
  auto r = call({"conditional", "--d", "2", "--R", "1", "--N", "10", "--k", "3", "--s", "0.4",
                 "--n", "6", "--grid", "400"});
  REQUIRE(r.code == 0);
  CHECK(std::fabs(trapezoid(parse_csv(r.out), "r", "pdf") - 1.0) <= 1e-3);

  r = call({"conditional", "--d", "2", "--R", "1", "--N", "10", "--k", "5", "--s", "0.6", "--n",
            "3", "--moment"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 3);
  CHECK(csv.rows[0][0] == "quadrature");
  CHECK(csv.rows[1][0] == "closed-form-k+1-denominator");
  CHECK(csv.rows[2][0] == "closed-form-k-denominator");
  CHECK(std::fabs(csv.num(0, "value") - csv.num(2, "value")) < 1e-9);

  r = call({"conditional", "--d", "2", "--R", "1", "--N", "10", "--k", "5", "--s", "0.6", "--n",
            "5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("n = k") != std::string::npos);
  CHECK(call({"conditional", "--d", "2", "--R", "1", "--N", "10", "--k", "5", "--s", "1.2",
              "--n", "3"})
            .code == 2);
}

TEST_CASE("metrics command") {
  auto r = call({"metrics", "--metric", "interference", "--d", "3", "--alpha", "2", "--N", "10",
                 "--p", "0.5", "--R", "1", "--pathloss", "singular"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).num(0, "mean_interference") == 15.0);

  r = call({"metrics", "--metric", "interference", "--d", "2", "--alpha", "3", "--N", "10",
            "--R", "1"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).rows.at(0).at(0) == "inf");

  r = call({"metrics", "--metric", "interference", "--d", "2", "--alpha", "3", "--N", "10",
            "--R", "1", "--pathloss", "bounded"});
  CHECK(r.code == 2);

  r = call({"metrics", "--metric", "connectivity", "--d", "2", "--N", "25", "--R", "1",
            "--alpha", "4", "--n0", "0.01", "--theta-grid", "1e-2:1e3:50", "--all-n"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 50 * 25);
  CHECK(std::fabs(csv.num(0, "theta") - 1e-2) < 1e-15);
  CHECK(std::fabs(csv.num(csv.rows.size() - 1, "theta") - 1e3) < 1e-9);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    if (csv.num(i, "theta") <= 100.0) CHECK(csv.num(i, "connectivity") == 1.0);
  }

  r = call({"metrics", "--metric", "outage-bound", "--d", "2", "--N", "5", "--R", "1", "--alpha",
            "4", "--p", "0.35", "--theta-grid", "1e-2:1e2:9"});
  REQUIRE(r.code == 0);
  csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(std::fabs(csv.num(i, "outage_lower_bound") + csv.num(i, "success_upper_bound") - 1.0) <
          1e-15);

  r = call({"metrics", "--metric", "energy", "--d", "2", "--N", "5", "--R", "1", "--all-n"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).rows.size() == 5);

  CHECK(call({"metrics", "--metric", "outage-bound", "--d", "2", "--N", "5", "--R", "1",
              "--simulate"})
            .code == 2);
  CHECK(call({"metrics", "--metric", "connectivity", "--d", "2", "--N", "5", "--R", "1", "--n",
              "1", "--theta-grid", "0:1:3"})
            .code == 2);
}

TEST_CASE("outage sweep with simulation columns") {
  const auto r = call({"metrics", "--metric", "outage-bound", "--d", "2", "--N", "5", "--R", "1",
                       "--p", "0.35", "--theta-grid", "1e-2:1:3", "--simulate", "--seed", "3",
                       "--trials", "20000"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(csv.num(i, "empirical_outage") >=
          csv.num(i, "outage_lower_bound") - 2.0 * csv.num(i, "standard_error"));
    CHECK(std::fabs(csv.num(i, "empirical_success") + csv.num(i, "empirical_outage") - 1.0) <
          1e-15);
  }
}

TEST_CASE("json output round-trips") {
  const auto r = call({"moments", "--d", "2", "--R", "1", "--N", "4", "--gamma", "-3", "--all-n",
                       "--format", "json"});
  REQUIRE(r.code == 0);
  const OutputTable t = OutputTable::from_json(r.out);
  CHECK(t.columns() == std::vector<std::string>{"n", "moment", "mean", "variance"});
  REQUIRE(t.rows().size() == 4);
  CHECK(std::isinf(std::get<double>(t.rows()[0][1])));
  CHECK(std::isfinite(std::get<double>(t.rows()[1][1])));
  CHECK(t.to_json() == r.out);
}

TEST_CASE("validate is reproducible and reports status through the exit code") {
  const std::vector<std::string> args{"validate", "--suite", "outage", "--seed", "7",
                                      "--trials", "5000"};
  const auto a = call(args);
  const auto b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("timestamp") == std::string::npos);
  CHECK(call({"validate", "--suite", "outage"}).code == 2);
  CHECK(call({"validate", "--suite", "bogus", "--seed", "1"}).code == 2);
}

TEST_CASE("underpowered runs are flagged") {
  const auto r = call({"validate", "--suite", "outage", "--seed", "1", "--trials", "10"});
  CHECK((r.code == 0 || r.code == 1));
  CHECK(r.out.find("underpowered") != std::string::npos);
  CHECK(r.err.find("underpowered") != std::string::npos);
}

TEST_CASE("worker count from environment, flag wins") {
  ::setenv("BPPDIST_WORKERS", "3", 1);
  auto r = call({"validate", "--suite", "outage", "--seed", "1", "--trials", "1000"});
  CHECK(r.out.find("# workers=3") != std::string::npos);
  r = call({"validate", "--suite", "outage", "--seed", "1", "--trials", "1000", "--workers", "2"});
  CHECK(r.out.find("# workers=2") != std::string::npos);
  ::setenv("BPPDIST_WORKERS", "zero", 1);
  CHECK(call({"validate", "--suite", "outage", "--seed", "1", "--trials", "1000"}).code == 2);
  ::unsetenv("BPPDIST_WORKERS");
}

TEST_CASE("log grids") {
  const auto g = bppdist::cli::parse_log_grid("1e-2:1e3:6");
  REQUIRE(g.size() == 6);
  CHECK(g.front() == 1e-2);
  CHECK(g.back() == 1e3);
  CHECK(std::fabs(g[1] - 1e-1) < 1e-15);
  CHECK(bppdist::cli::parse_log_grid("2:2:1") == std::vector<double>{2.0});
  CHECK_THROWS(bppdist::cli::parse_log_grid("1:2"));
  CHECK_THROWS(bppdist::cli::parse_log_grid("2:1:3"));
  CHECK_THROWS(bppdist::cli::parse_log_grid("a:1:3"));
}

TEST_CASE("top-level usage") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  const auto v = call({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  CHECK(call({"dist", "--help"}).code == 0);
}
