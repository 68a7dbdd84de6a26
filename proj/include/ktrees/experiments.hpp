#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ktrees/graph.hpp"
#include "ktrees/min_ktrees.hpp"

namespace ktrees::experiments {

enum class Kind { Weight, Structure, Rank, Core, Density };

const char* kind_name(Kind kind);
Kind parse_kind(const std::string& name);

struct ExperimentConfig {
  Kind kind = Kind::Weight;
  int n = 1000;
  int k = 1;
  int trials = 1;
  std::uint64_t seed = 0;
  WeightDistribution dist;       // weight kind
  std::vector<double> degrees;   // structure/rank/core/density kinds, sorted ascending
  bool allow_large = false;      // n > 20000 needs an explicit override

  void validate() const;
};

struct ExperimentRecord {
  std::string kind;
  int n = 0;
  int k = 0;
  double d = 0.0;        // 0 for the weight kind
  std::string metric;
  int trial = 0;         // -1 marks the summary row of a (metric, d) cell
  double empirical = 0.0;
  double predicted = 0.0;
  double rel_error = 0.0;  // |empirical - predicted| / max(|predicted|, 1e-12)
  double stddev = 0.0;     // sample std, summary rows only (NaN elsewhere)
  bool failed = false;     // failed trial (e.g. infeasible solve)
};

double relative_error(double empirical, double predicted);

/// Minimum k-tree-union weight on weighted complete graphs vs the analytic
/// limit for the configured distribution's density slope.
std::vector<ExperimentRecord> run_weight_experiment(const ExperimentConfig& cfg);

/// Largest non-trivial k-deeply connected component (vs beta_k(d) * n) and
/// the count of non-trivial components (vs 0 below / 1 above the threshold)
/// in G(n, floor(dn/2)).
std::vector<ExperimentRecord> run_structure_experiment(const ExperimentConfig& cfg);

/// rank/n of G(n, floor(dn/2)) vs the rank density.
std::vector<ExperimentRecord> run_rank_experiment(const ExperimentConfig& cfg);

/// (k+1)-core size fraction and density of G(n, d/n) vs the Poisson
/// fixed-point laws.
std::vector<ExperimentRecord> run_core_experiment(const ExperimentConfig& cfg);

/// Rank deficit (|E| - rank)/n of G(n, floor(dn/2)); near 0 up to the deep
/// threshold.
std::vector<ExperimentRecord> run_density_check(const ExperimentConfig& cfg);

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

/// Deterministic CSV: fixed column order and fixed decimal formatting, so
/// identical records produce byte-identical files.
void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path);
std::string render_csv(const std::vector<ExperimentRecord>& records);

/// Process traces share the CSV conventions.
void emit_process_csv(const ProcessTrace& trace, int n, int k, const std::string& path);
std::string render_process_csv(const ProcessTrace& trace, int n, int k);

}  // namespace ktrees::experiments
