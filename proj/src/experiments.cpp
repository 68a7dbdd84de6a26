#include "ktrees/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "ktrees/analytic.hpp"
#include "ktrees/deep_components.hpp"
#include "ktrees/forest_family.hpp"

namespace ktrees::experiments {

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::Weight: return "weight";
    case Kind::Structure: return "structure";
    case Kind::Rank: return "rank";
    case Kind::Core: return "core";
    case Kind::Density: return "density";
  }
  return "?";
}

Kind parse_kind(const std::string& name) {
  for (Kind kind : {Kind::Weight, Kind::Structure, Kind::Rank, Kind::Core, Kind::Density})
    if (name == kind_name(kind)) return kind;
  throw InvalidArgument("unknown experiment kind '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw InvalidArgument("experiment: n must be >= 2");
  if (trials < 1) throw InvalidArgument("experiment: trials must be >= 1");
  if (k < 1) throw InvalidArgument("experiment: k must be >= 1");
  if (n > 20000 && !allow_large)
    throw InvalidArgument("experiment: n > 20000 needs the large-instance override");
  if (kind != Kind::Weight) {
    if (degrees.empty()) throw InvalidArgument("experiment: degree grid is required");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (!(degrees[i] >= 0)) throw InvalidArgument("experiment: degrees must be >= 0");
      if (i > 0 && degrees[i] < degrees[i - 1])
        throw InvalidArgument("experiment: degree grid must be sorted ascending");
    }
  }
  if ((kind == Kind::Rank || kind == Kind::Density) && k < 2)
    throw InvalidArgument("experiment: rank/density experiments need k >= 2");
}

double relative_error(double empirical, double predicted) {
  return std::abs(empirical - predicted) / std::max(std::abs(predicted), 1e-12);
}

namespace {

void parallel_for(int count, const std::function<void(int)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

ExperimentRecord base_record(const ExperimentConfig& cfg, double d, const std::string& metric,
                             int trial) {
  ExperimentRecord rec;
  rec.kind = kind_name(cfg.kind);
  rec.n = cfg.n;
  rec.k = cfg.k;
  rec.d = d;
  rec.metric = metric;
  rec.trial = trial;
  rec.stddev = std::numeric_limits<double>::quiet_NaN();
  return rec;
}

// append the summary row (mean, sample std, relative error of the mean) for
// one (metric, d) cell; failed trials are excluded from the statistics
void append_summary(std::vector<ExperimentRecord>& out,
                    const std::vector<ExperimentRecord>& cell, const ExperimentConfig& cfg,
                    double d, const std::string& metric, double predicted) {
  double sum = 0;
  int count = 0;
  for (const auto& rec : cell)
    if (!rec.failed) {
      sum += rec.empirical;
      ++count;
    }
  ExperimentRecord rec = base_record(cfg, d, metric, -1);
  rec.predicted = predicted;
  if (count == 0) {
    rec.empirical = std::numeric_limits<double>::quiet_NaN();
    rec.rel_error = std::numeric_limits<double>::quiet_NaN();
    rec.stddev = std::numeric_limits<double>::quiet_NaN();
    rec.failed = true;
  } else {
    const double mean = sum / count;
    double ss = 0;
    for (const auto& r : cell)
      if (!r.failed) ss += (r.empirical - mean) * (r.empirical - mean);
    rec.empirical = mean;
    rec.rel_error = relative_error(mean, predicted);
    rec.stddev = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
  }
  out.push_back(rec);
}

}  // namespace

std::vector<ExperimentRecord> run_weight_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const double predicted = analytic::limit_weight(cfg.k, cfg.dist.density_slope()).value;
  std::vector<ExperimentRecord> rows(cfg.trials);
  parallel_for(cfg.trials, [&](int trial) {
    const std::uint64_t trial_seed = Rng::derive(cfg.seed, trial);
    const WeightedGraph wg = gen_weighted_complete(cfg.n, cfg.dist, trial_seed);
    const Solution sol = min_weight_union(wg, cfg.k);
    ExperimentRecord rec = base_record(cfg, 0.0, "total_weight", trial);
    rec.predicted = predicted;
    if (sol.feasible) {
      rec.empirical = sol.total_weight;
      rec.rel_error = relative_error(rec.empirical, predicted);
    } else {
      rec.empirical = std::numeric_limits<double>::quiet_NaN();
      rec.rel_error = std::numeric_limits<double>::quiet_NaN();
      rec.failed = true;
    }
    rows[trial] = rec;
  });
  std::vector<ExperimentRecord> out = rows;
  append_summary(out, rows, cfg, 0.0, "total_weight", predicted);
  return out;
}

namespace {

// shared scaffolding for the per-(trial, degree) experiment kinds
std::vector<ExperimentRecord> run_degree_grid(
    const ExperimentConfig& cfg, int metrics_per_cell,
    const std::function<void(int trial, double d, std::uint64_t seed,
                             std::vector<ExperimentRecord>&)>& run_trial) {
  cfg.validate();
  const int degree_count = static_cast<int>(cfg.degrees.size());
  const int cells = cfg.trials * degree_count;
  std::vector<std::vector<ExperimentRecord>> slots(cells);
  parallel_for(cells, [&](int slot) {
    const int trial = slot / degree_count;
    const int di = slot % degree_count;
    const std::uint64_t seed = Rng::derive(Rng::derive(cfg.seed, trial), di);
    run_trial(trial, cfg.degrees[di], seed, slots[slot]);
  });
  std::vector<ExperimentRecord> out;
  out.reserve(cells * metrics_per_cell + degree_count * metrics_per_cell);
  for (int trial = 0; trial < cfg.trials; ++trial)
    for (int di = 0; di < degree_count; ++di)
      for (const auto& rec : slots[trial * degree_count + di]) out.push_back(rec);
  // per-degree summaries, grouped by metric in first-appearance order
  for (int di = 0; di < degree_count; ++di) {
    std::vector<std::string> metric_order;
    for (const auto& rec : slots[di])
      metric_order.push_back(rec.metric);
    for (const auto& metric : metric_order) {
      std::vector<ExperimentRecord> cell;
      double predicted = 0;
      for (int trial = 0; trial < cfg.trials; ++trial)
        for (const auto& rec : slots[trial * degree_count + di])
          if (rec.metric == metric) {
            cell.push_back(rec);
            predicted = rec.predicted;
          }
      append_summary(out, cell, cfg, cfg.degrees[di], metric, predicted);
    }
  }
  return out;
}

}  // namespace

std::vector<ExperimentRecord> run_structure_experiment(const ExperimentConfig& cfg) {
  const double threshold =
      cfg.k == 1 ? 1.0 : analytic::deep_threshold(cfg.k).d_star;
  return run_degree_grid(
      cfg, 2,
      [&](int trial, double d, std::uint64_t seed, std::vector<ExperimentRecord>& out) {
        const std::int64_t m = static_cast<std::int64_t>(std::floor(d * cfg.n / 2));
        const Graph g = gen_gnm(cfg.n, std::min(m, Graph::max_edges(cfg.n)), seed);
        const DeepPartition part = components(g, cfg.k);

        ExperimentRecord size_rec = base_record(cfg, d, "largest_component", trial);
        size_rec.empirical = part.largest_nontrivial_size();
        size_rec.predicted = analytic::beta(cfg.k, d) * cfg.n;
        size_rec.rel_error = relative_error(size_rec.empirical, size_rec.predicted);
        out.push_back(size_rec);

        ExperimentRecord count_rec = base_record(cfg, d, "nontrivial_count", trial);
        count_rec.empirical = part.nontrivial_count();
        count_rec.predicted = d < threshold ? 0.0 : 1.0;
        count_rec.rel_error = relative_error(count_rec.empirical, count_rec.predicted);
        out.push_back(count_rec);
      });
}

std::vector<ExperimentRecord> run_rank_experiment(const ExperimentConfig& cfg) {
  return run_degree_grid(
      cfg, 1,
      [&](int trial, double d, std::uint64_t seed, std::vector<ExperimentRecord>& out) {
        const std::int64_t m = static_cast<std::int64_t>(std::floor(d * cfg.n / 2));
        const Graph g = gen_gnm(cfg.n, std::min(m, Graph::max_edges(cfg.n)), seed);
        ExperimentRecord rec = base_record(cfg, d, "rank_per_n", trial);
        rec.empirical = static_cast<double>(rank_of(g, cfg.k)) / cfg.n;
        rec.predicted = analytic::rank_density(cfg.k, d);
        rec.rel_error = relative_error(rec.empirical, rec.predicted);
        out.push_back(rec);
      });
}

std::vector<ExperimentRecord> run_core_experiment(const ExperimentConfig& cfg) {
  const int kappa = cfg.k + 1;
  const analytic::GammaThreshold gamma = analytic::gamma_threshold(kappa);
  return run_degree_grid(
      cfg, 2,
      [&](int trial, double d, std::uint64_t seed, std::vector<ExperimentRecord>& out) {
        const Graph g = gen_gnp(cfg.n, std::min(d / cfg.n, 1.0), seed);
        const CoreResult core = kcore(g, kappa);
        double frac_pred = 0, dens_pred = 0;
        if (d > gamma.value + 1e-9) {
          const double lam = analytic::lambda_root(kappa, d);
          frac_pred = analytic::pois_tail(kappa, lam);
          dens_pred = analytic::truncated_mean(kappa, lam);
        }
        ExperimentRecord frac = base_record(cfg, d, "core_fraction", trial);
        frac.empirical = static_cast<double>(core.size()) / cfg.n;
        frac.predicted = frac_pred;
        frac.rel_error = relative_error(frac.empirical, frac.predicted);
        out.push_back(frac);

        ExperimentRecord dens = base_record(cfg, d, "core_density", trial);
        dens.empirical = core.density;
        dens.predicted = dens_pred;
        dens.rel_error = relative_error(dens.empirical, dens.predicted);
        out.push_back(dens);
      });
}

std::vector<ExperimentRecord> run_density_check(const ExperimentConfig& cfg) {
  return run_degree_grid(
      cfg, 1,
      [&](int trial, double d, std::uint64_t seed, std::vector<ExperimentRecord>& out) {
        const std::int64_t m = static_cast<std::int64_t>(std::floor(d * cfg.n / 2));
        const Graph g = gen_gnm(cfg.n, std::min(m, Graph::max_edges(cfg.n)), seed);
        ExperimentRecord rec = base_record(cfg, d, "rank_deficit_per_n", trial);
        rec.empirical =
            static_cast<double>(g.edge_count() - rank_of(g, cfg.k)) / cfg.n;
        rec.predicted = 0.0;
        rec.rel_error = relative_error(rec.empirical, rec.predicted);
        out.push_back(rec);
      });
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case Kind::Weight: return run_weight_experiment(cfg);
    case Kind::Structure: return run_structure_experiment(cfg);
    case Kind::Rank: return run_rank_experiment(cfg);
    case Kind::Core: return run_core_experiment(cfg);
    case Kind::Density: return run_density_check(cfg);
  }
  throw InvalidArgument("run_experiment: bad kind");
}

namespace {

std::string format_double(double value, int places) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, value);
  return buf;
}

}  // namespace

std::string render_csv(const std::vector<ExperimentRecord>& records) {
  std::string out = "kind,n,k,d,metric,trial,empirical,predicted,rel_error,stddev,status\n";
  for (const auto& rec : records) {
    out += rec.kind;
    out += ',' + std::to_string(rec.n);
    out += ',' + std::to_string(rec.k);
    out += ',' + format_double(rec.d, 6);
    out += ',' + rec.metric;
    out += ',' + (rec.trial < 0 ? std::string("summary") : std::to_string(rec.trial));
    out += ',' + format_double(rec.empirical, 9);
    out += ',' + format_double(rec.predicted, 9);
    out += ',' + format_double(rec.rel_error, 9);
    out += ',' + (std::isnan(rec.stddev) && rec.trial >= 0 ? std::string("")
                                                           : format_double(rec.stddev, 9));
    out += ',' + std::string(rec.failed ? "failed" : "ok");
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << render_csv(records);
  file.flush();
  if (!file) throw IoError("write failed for '" + path + "'");
}

std::string render_process_csv(const ProcessTrace& trace, int n, int k) {
  std::string out =
      "n,k,m,rank,largest_nontrivial_component,nontrivial_component_count,core_size,core_edges\n";
  for (const auto& cp : trace.checkpoints) {
    out += std::to_string(n);
    out += ',' + std::to_string(k);
    out += ',' + std::to_string(cp.m);
    out += ',' + std::to_string(cp.rank);
    out += ',' + std::to_string(cp.largest_nontrivial_component);
    out += ',' + std::to_string(cp.nontrivial_component_count);
    out += ',' + std::to_string(cp.core_size);
    out += ',' + std::to_string(cp.core_edges);
    out += '\n';
  }
  return out;
}

void emit_process_csv(const ProcessTrace& trace, int n, int k, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << render_process_csv(trace, n, k);
  file.flush();
  if (!file) throw IoError("write failed for '" + path + "'");
}

}  // namespace ktrees::experiments
