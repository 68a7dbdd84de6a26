#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ktrees/analytic.hpp"
#include "ktrees/experiments.hpp"
#include "ktrees/graph.hpp"

using namespace ktrees;
using namespace ktrees::experiments;

namespace {

ExperimentConfig weight_config(int n, int k, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.kind = Kind::Weight;
  cfg.n = n;
  cfg.k = k;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig cfg = weight_config(1, 1, 1, 0);
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.n = 100;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.trials = 1;
  cfg.validate();

  cfg.kind = Kind::Rank;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);  // degree grid required
  cfg.degrees = {3.0, 2.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);  // unsorted
  cfg.degrees = {2.0, 3.0};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);  // rank needs k >= 2
  cfg.k = 2;
  cfg.validate();

  cfg.n = 30000;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.allow_large = true;
  cfg.validate();

  CHECK_THROWS_AS(parse_kind("nope"), InvalidArgument);
  CHECK(parse_kind("weight") == Kind::Weight);
  CHECK(parse_kind("density") == Kind::Density);
}

TEST_CASE("weight experiment: records, summary arithmetic, determinism") {
  const auto cfg = weight_config(60, 2, 4, 99);
  const auto records = run_weight_experiment(cfg);
  REQUIRE(records.size() == 5);  // 4 trials + summary

  const double predicted = analytic::limit_weight(2, 1.0).value;
  double sum = 0;
  for (int t = 0; t < 4; ++t) {
    CHECK(records[t].trial == t);
    CHECK(!records[t].failed);
    CHECK(records[t].predicted == predicted);
    CHECK(records[t].rel_error ==
          doctest::Approx(relative_error(records[t].empirical, predicted)));
    sum += records[t].empirical;
  }
  const auto& summary = records[4];
  CHECK(summary.trial == -1);
  CHECK(summary.empirical == doctest::Approx(sum / 4));
  double ss = 0;
  for (int t = 0; t < 4; ++t)
    ss += std::pow(records[t].empirical - summary.empirical, 2);
  CHECK(summary.stddev == doctest::Approx(std::sqrt(ss / 3)));

  // byte-identical reruns
  CHECK(render_csv(records) == render_csv(run_weight_experiment(cfg)));
}

TEST_CASE("distinct seeds give distinct trials; per-trial streams are stable") {
  const auto a = run_weight_experiment(weight_config(40, 1, 3, 1));
  const auto b = run_weight_experiment(weight_config(40, 1, 3, 2));
  CHECK(a[0].empirical != b[0].empirical);

  // trial t of a longer run equals trial t of a shorter one (slot addressing)
  const auto four = run_weight_experiment(weight_config(40, 1, 4, 1));
  for (int t = 0; t < 3; ++t) CHECK(a[t].empirical == four[t].empirical);
}

TEST_CASE("structure experiment on a small instance stays well-formed") {
  ExperimentConfig cfg;
  cfg.kind = Kind::Structure;
  cfg.n = 8;
  cfg.k = 2;
  cfg.trials = 3;
  cfg.seed = 4;
  cfg.degrees = {1.0, 3.0};
  const auto records = run_structure_experiment(cfg);
  // 3 trials * 2 degrees * 2 metrics + 2 degrees * 2 summaries
  REQUIRE(records.size() == 16);
  for (const auto& rec : records) {
    CHECK((rec.metric == "largest_component" || rec.metric == "nontrivial_count"));
    CHECK(rec.empirical >= 0);
    CHECK(std::isfinite(rec.empirical));
    if (rec.trial >= 0)
      CHECK(rec.rel_error == doctest::Approx(relative_error(rec.empirical, rec.predicted)));
  }
}

TEST_CASE("core experiment predictions come straight from the analytic module") {
  ExperimentConfig cfg;
  cfg.kind = Kind::Core;
  cfg.n = 400;
  cfg.k = 2;
  cfg.trials = 2;
  cfg.seed = 11;
  cfg.degrees = {2.0, 5.0};
  const auto records = run_core_experiment(cfg);
  const auto gamma = analytic::gamma_threshold(3);
  for (const auto& rec : records) {
    if (rec.d <= gamma.value) {
      CHECK(rec.predicted == 0.0);
      continue;
    }
    const double lam = analytic::lambda_root(3, rec.d);
    if (rec.metric == "core_fraction")
      CHECK(rec.predicted == analytic::pois_tail(3, lam));
    else
      CHECK(rec.predicted == analytic::truncated_mean(3, lam));
  }
}

TEST_CASE("density check: deficits are nonnegative and tiny well below threshold") {
  ExperimentConfig cfg;
  cfg.kind = Kind::Density;
  cfg.n = 500;
  cfg.k = 2;
  cfg.trials = 3;
  cfg.seed = 21;
  cfg.degrees = {1.0};
  const auto records = run_density_check(cfg);
  for (const auto& rec : records) {
    CHECK(rec.empirical >= 0.0);
    if (rec.trial >= 0) CHECK(rec.empirical <= 0.05);
  }
}

TEST_CASE("csv: header-only for no records, stable shape, parse-back") {
  CHECK(render_csv({}) == "kind,n,k,d,metric,trial,empirical,predicted,rel_error,stddev,status\n");

  const auto records = run_weight_experiment(weight_config(40, 1, 2, 5));
  const std::string text = render_csv(records);

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::size_t row = 0;
  while (std::getline(in, line)) {
    REQUIRE(row < records.size());
    std::stringstream fields(line);
    std::string kind, n, k, d, metric, trial, empirical, predicted, rel, stddev, status;
    std::getline(fields, kind, ',');
    std::getline(fields, n, ',');
    std::getline(fields, k, ',');
    std::getline(fields, d, ',');
    std::getline(fields, metric, ',');
    std::getline(fields, trial, ',');
    std::getline(fields, empirical, ',');
    std::getline(fields, predicted, ',');
    std::getline(fields, rel, ',');
    std::getline(fields, stddev, ',');
    std::getline(fields, status, ',');
    CHECK(kind == "weight");
    CHECK(std::stoi(n) == 40);
    CHECK(std::abs(std::stod(empirical) - records[row].empirical) <= 5e-10);
    CHECK(std::abs(std::stod(predicted) - records[row].predicted) <= 5e-10);
    CHECK(status == "ok");
    ++row;
  }
  CHECK(row == records.size());

  const std::string path = "test_experiments_tmp.csv";
  emit_csv(records, path);
  std::ifstream file(path);
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str() == text);
  std::remove(path.c_str());

  CHECK_THROWS_AS(emit_csv(records, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("process csv renders every checkpoint") {
  const ProcessTrace trace = run_process(10, 2, {0, 10, 30}, 3);
  const std::string text = render_process_csv(trace, 10, 2);
  std::size_t lines = 0;
  for (const char c : text) lines += c == '\n';
  CHECK(lines == 4);  // header + 3 checkpoints
  CHECK(text.rfind("n,k,m,rank,", 0) == 0);
}
