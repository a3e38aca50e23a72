#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "credit_engine/report.hpp"
#include "doctest.h"

using namespace credit_engine;
using namespace credit_engine::ingest;
using namespace credit_engine::report;

namespace {

class TempPath {
 public:
  TempPath() {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("credit_engine_report_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++)))
                .string();
  }
  ~TempPath() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs the CLI entry point in-process with stdout captured.
int run_cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "credit-engine");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& arg : args) argv.push_back(arg.data());

  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  const int rc = run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  out = captured.str();
  return rc;
}

StoredBin bin(int n, std::int64_t papers, std::optional<double> ncs,
              std::optional<double> pct, bool open_ended = false) {
  return {n, open_ended, papers, ncs, pct};
}

}  // namespace

TEST_SUITE("cli_report") {

TEST_CASE("relative empirical values against the single-author baseline") {
  const std::vector<StoredBin> bins = {
      bin(1, 100, 0.647, 60.0),
      bin(2, 80, 0.895, 40.0),
      bin(3, 10, std::nullopt, 40.0),
      bin(4, 0, std::nullopt, std::nullopt),
  };

  const auto ncs_rel = relative_empirical(bins, Indicator::ncs);
  // 0.895 / 0.647, checked on an independent calculator.
  CHECK(ncs_rel.at(2) == doctest::Approx(1.3833075734157652).epsilon(1e-12));
  CHECK(std::fabs(ncs_rel.at(2) - 1.383) <= 1e-3);
  CHECK(ncs_rel.at(1) == doctest::Approx(1.0));
  CHECK(ncs_rel.count(3) == 0);
  CHECK(ncs_rel.count(4) == 0);

  const auto pct_rel = relative_empirical(bins, Indicator::percentile);
  CHECK(pct_rel.at(1) == doctest::Approx(1.0));
  CHECK(pct_rel.at(3) == doctest::Approx((100.0 - 40.0) / (100.0 - 60.0)));
  CHECK(pct_rel.count(4) == 0);

  // v1 scales the whole curve.
  CHECK(relative_empirical(bins, Indicator::ncs, 2.0).at(2) ==
        doctest::Approx(2.0 * 0.895 / 0.647));
}

TEST_CASE("baseline errors") {
  CHECK_THROWS_AS(relative_empirical({bin(2, 5, 1.0, 50.0)}, Indicator::ncs),
                  std::domain_error);
  CHECK_THROWS_AS(relative_empirical({bin(1, 5, std::nullopt, 50.0)}, Indicator::ncs),
                  std::domain_error);
  CHECK_THROWS_AS(relative_empirical({bin(1, 5, 0.0, 50.0)}, Indicator::ncs),
                  std::domain_error);
  // Converted percentile baseline of zero (stored 100) is as unusable.
  CHECK_THROWS_AS(relative_empirical({bin(1, 5, 1.0, 100.0)}, Indicator::percentile),
                  std::domain_error);
}

TEST_CASE("comparison rows") {
  StatsFile stats;
  stats.bins = {bin(1, 100, 0.647, 60.0), bin(2, 80, 0.895, 40.0)};

  const auto rows = build_comparison(stats, 9);
  REQUIRE(rows.size() == 9);
  const double table1[] = {1.000, 4.0 / 3.0, 1.50, 1.60, 5.0 / 3.0, 12.0 / 7.0,
                           1.750, 16.0 / 9.0, 1.80};
  for (int n = 1; n <= 9; ++n) {
    CHECK(rows[n - 1].n == n);
    CHECK(rows[n - 1].theoretical == doctest::Approx(table1[n - 1]).epsilon(1e-12));
    CHECK(rows[n - 1].hsu_model == doctest::Approx(std::cbrt(n / 5.0)).epsilon(1e-12));
  }
  CHECK(rows[0].paper_count == 100);
  CHECK(rows[1].ncs_relative.has_value());
  CHECK_FALSE(rows[2].ncs_relative.has_value());
  CHECK(rows[2].paper_count == 0);

  CHECK_THROWS_AS(build_comparison(stats, 0), std::domain_error);
}

TEST_CASE("comparison files") {
  StatsFile stats;
  stats.refsets = {{"A", 2000, 2, 10.0}};
  stats.bins = {bin(1, 1, 1.0, 50.0), bin(2, 1, 1.2, 25.0)};
  TempPath stats_path;
  persist_stats(stats, stats_path.path());

  TempPath out_path;
  const auto rows = compare(stats_path.path(), 3, out_path.path());
  CHECK(rows.size() == 3);

  const auto text = slurp(out_path.path());
  CHECK(text.substr(0, 42) == "n\ttheoretical\tncs_rel\tpct_rel\tpapers\thsu\n1");
  // Row 3 has no bin: both relative columns absent.
  CHECK(text.find("\t-\t-\t0\t") != std::string::npos);

  // Byte-identical across runs.
  TempPath out_path2;
  compare(stats_path.path(), 3, out_path2.path());
  CHECK(slurp(out_path2.path()) == text);
}

TEST_CASE("cli expected-value") {
  std::string out;
  CHECK(run_cli({"expected-value", "--n", "4"}, out) == 0);
  CHECK(out == "1.60000\n");
  CHECK(run_cli({"expected-value", "--n", "2"}, out) == 0);
  CHECK(out == "1.33333\n");
  CHECK(run_cli({"expected-value", "--n", "4", "--v1", "2.5"}, out) == 0);
  CHECK(out == "4.00000\n");
}

TEST_CASE("cli credits") {
  std::string out;
  CHECK(run_cli({"credits", "--n", "2", "--method", "paper_ordered", "--scale-to-vn"}, out) ==
        0);
  CHECK(out == "1.00000, 0.333333\n");
  CHECK(run_cli({"credits", "--n", "3", "--method", "harmonic"}, out) == 0);
  CHECK(out == "0.545455, 0.272727, 0.181818\n");
  CHECK(run_cli({"credits", "--n", "3", "--method", "nope"}, out) == 1);
}

TEST_CASE("cli usage errors") {
  std::string out;
  CHECK(run_cli({"no-such-command"}, out) == 1);
  CHECK(run_cli({"expected-value"}, out) == 1);          // missing --n
  CHECK(run_cli({"expected-value", "--n", "0"}, out) == 1);
  CHECK(run_cli({"simulate", "--n", "2", "--samples", "10"}, out) == 1);
  CHECK(run_cli({}, out) == 1);                          // subcommand required
}

TEST_CASE("cli data errors") {
  std::string out;
  CHECK(run_cli({"ingest", "--input", "/nonexistent.csv", "--format", "csv", "--out",
                 "/tmp/credit_engine_wontexist"}, out) == 2);
  CHECK(run_cli({"compare", "--stats", "/nonexistent.stats", "--n-max", "5", "--out",
                 "/tmp/credit_engine_wontexist"}, out) == 2);
}

TEST_CASE("cli simulate prints a deterministic table") {
  std::string first;
  std::string second;
  CHECK(run_cli({"simulate", "--n", "2", "--samples", "2000", "--seed", "42", "--sampler",
                 "simplex", "--threads", "1"}, first) == 0);
  CHECK(run_cli({"simulate", "--n", "2", "--samples", "2000", "--seed", "42", "--sampler",
                 "simplex", "--threads", "3"}, second) == 0);
  CHECK(first == second);
  CHECK(first.find("n\testimate\tse\tacceptance\taccepted\tdrawn\n") == 0);
  CHECK(first.find("1.3") != std::string::npos);

  std::string chain;
  CHECK(run_cli({"simulate", "--n", "4", "--samples", "2000", "--seed", "42", "--sampler",
                 "simplex", "--chain"}, chain) == 0);
  CHECK(chain.find("\n2\t") != std::string::npos);
  CHECK(chain.find("\n3\t") != std::string::npos);
  CHECK(chain.find("\n4\t") != std::string::npos);
}

TEST_CASE("cli end-to-end ingest and compare") {
  TempPath csv;
  {
    std::ofstream out(csv.path(), std::ios::binary);
    out << "id,year,field,n_authors,citations,doc_type\n";
    for (int i = 0; i < 40; ++i) {
      const int n_authors = 1 + i % 4;
      out << "p" << i << ",2005,F," << n_authors << "," << 5 * n_authors + i % 3
          << ",article\n";
    }
    out << "bad,2005,F,0,1,article\n";
  }
  TempPath stats;
  TempPath table;

  std::string out;
  CHECK(run_cli({"ingest", "--input", csv.path(), "--format", "csv", "--out", stats.path(),
                 "--top-bin", "10"}, out) == 0);
  CHECK(out.find("records\t40") != std::string::npos);
  CHECK(out.find("rejected\t1") != std::string::npos);
  CHECK(out.find("filtered\t40") != std::string::npos);

  CHECK(run_cli({"compare", "--stats", stats.path(), "--n-max", "6", "--out", table.path()},
                out) == 0);
  const auto text = slurp(table.path());
  CHECK(text.find("n\ttheoretical\tncs_rel\tpct_rel\tpapers\thsu\n") == 0);
  CHECK(run_cli({"compare", "--stats", stats.path(), "--n-max", "6", "--out", table.path()},
                out) == 0);
}

}  // TEST_SUITE
