#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ktrees/analytic.hpp"
#include "ktrees/deep_components.hpp"
#include "ktrees/experiments.hpp"
#include "ktrees/forest_family.hpp"
#include "ktrees/graph.hpp"
#include "ktrees/min_ktrees.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidArgs = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw ktrees::InvalidArgument("empty list '" + text + "'");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  if (out.empty()) throw ktrees::InvalidArgument("empty list '" + text + "'");
  return out;
}

int cmd_solve(const std::string& input, int k, const std::string& out_path,
              const std::string& forests_prefix) {
  const ktrees::WeightedGraph wg = ktrees::read_edge_list_file(input);
  const ktrees::Solution sol = ktrees::min_weight_union(wg, k);

  ktrees::Graph chosen(wg.graph.n);
  std::vector<double> chosen_weights;
  for (const std::int64_t id : sol.chosen_edges) {
    chosen.edges.push_back(wg.graph.edges[id]);
    if (!wg.weights.empty()) chosen_weights.push_back(wg.weights[id]);
  }
  if (!out_path.empty()) {
    ktrees::write_edge_list_file(out_path, chosen, &chosen_weights);
  } else {
    ktrees::write_edge_list(std::cout, chosen, &chosen_weights);
  }
  if (!forests_prefix.empty()) {
    for (std::size_t f = 0; f < sol.forests.size(); ++f) {
      ktrees::Graph forest(wg.graph.n);
      std::vector<double> weights;
      for (const std::int64_t id : sol.forests[f]) {
        forest.edges.push_back(wg.graph.edges[id]);
        if (!wg.weights.empty()) weights.push_back(wg.weights[id]);
      }
      ktrees::write_edge_list_file(forests_prefix + std::to_string(f), forest, &weights);
    }
  }
  std::cout << "weight " << fmt(sol.total_weight) << " feasible "
            << (sol.feasible ? "true" : "false") << "\n";
  return sol.feasible ? kExitOk : kExitInfeasible;
}

int cmd_rank(const std::string& input, int k) {
  const ktrees::WeightedGraph wg = ktrees::read_edge_list_file(input);
  std::cout << "rank " << ktrees::rank_of(wg.graph, k) << "\n";
  return kExitOk;
}

int cmd_components(const std::string& input, int k) {
  const ktrees::WeightedGraph wg = ktrees::read_edge_list_file(input);
  const ktrees::DeepPartition part = ktrees::components(wg.graph, k);
  for (int v = 0; v < wg.graph.n; ++v)
    std::cout << part.component_id[v] << "\t" << v << "\n";
  return kExitOk;
}

int cmd_layers(const std::string& input, int k) {
  const ktrees::WeightedGraph wg = ktrees::read_edge_list_file(input);
  const ktrees::Layers rep = ktrees::normal_representation(wg.graph, k);
  for (std::size_t layer = 0; layer < rep.layers.size(); ++layer)
    for (const int v : rep.layers[layer]) std::cout << layer << "\t" << v << "\n";
  return kExitOk;
}

int cmd_core(const std::string& input, int kappa) {
  const ktrees::WeightedGraph wg = ktrees::read_edge_list_file(input);
  const ktrees::CoreResult core = ktrees::kcore(wg.graph, kappa);
  std::cout << "kappa " << core.kappa << " size " << core.size() << " edges "
            << core.induced_edge_count << " density " << fmt(core.density) << "\n";
  for (const int v : core.vertices) std::cout << v << "\n";
  return kExitOk;
}

int cmd_predict_table(int k, double d) {
  const ktrees::analytic::AnalyticTable table = ktrees::analytic::make_table(k, d);
  std::cout << "k " << table.k << "\n"
            << "mean_degree " << fmt(table.d) << "\n"
            << "gamma " << fmt(table.gamma) << "\n"
            << "lambda " << fmt(table.lambda) << "\n"
            << "beta " << fmt(table.beta) << "\n"
            << "rank_density " << fmt(table.rank_density) << "\n"
            << "core_fraction " << fmt(table.core_fraction) << "\n"
            << "core_density " << fmt(table.core_density) << "\n";
  return kExitOk;
}

int cmd_predict_weight(int k, double a, std::optional<double> tol) {
  ktrees::analytic::SolverConfig cfg;
  if (tol) cfg.quad_rel_tol = *tol;
  const auto result = ktrees::analytic::limit_weight(k, a, cfg);
  std::cout << "limit_weight " << fmt(result.value) << " error_estimate "
            << fmt(result.error_estimate) << "\n";
  return kExitOk;
}

int cmd_predict_thresholds(int k) {
  const auto gamma = ktrees::analytic::gamma_threshold(k + 1);
  const auto threshold = ktrees::analytic::deep_threshold(k);
  std::cout << "gamma " << fmt(gamma.value) << "\n"
            << "d_star " << fmt(threshold.d_star) << "\n"
            << "d_star_intro " << fmt(threshold.d_star_intro) << "\n"
            << "difference " << fmt(threshold.difference) << "\n"
            << "degenerate " << (threshold.degenerate ? "true" : "false") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum-weight unions of k edge-disjoint spanning trees: solver, "
               "decompositions, Poisson fixed-point predictions, Monte-Carlo experiments"};
  app.require_subcommand(1);

  std::string input, out_path, forests_prefix, csv_path;
  int k = 1, kappa = 1, n = 1000, trials = 10;
  double mean_degree = 0, slope = 1.0;
  std::uint64_t seed = 0;
  std::string degrees_text, dist_text = "uniform01", checkpoints_text;
  bool allow_large = false;
  std::optional<double> quad_tol;

  auto* solve = app.add_subcommand("solve", "minimum-weight union of k spanning trees");
  solve->add_option("--input", input)->required();
  solve->add_option("--k", k)->required();
  solve->add_option("--out", out_path);
  solve->add_option("--forests-prefix", forests_prefix);

  auto* rank = app.add_subcommand("rank", "rank of the edge set in the union matroid");
  rank->add_option("--input", input)->required();
  rank->add_option("--k", k)->required();

  auto* comps = app.add_subcommand("components", "k-deeply connected components");
  comps->add_option("--input", input)->required();
  comps->add_option("--k", k)->required();

  auto* layers = app.add_subcommand("layers", "normal representation layers");
  layers->add_option("--input", input)->required();
  layers->add_option("--k", k)->required();

  auto* core = app.add_subcommand("core", "kappa-core by peeling");
  core->add_option("--input", input)->required();
  core->add_option("--kappa", kappa)->required();

  auto* predict = app.add_subcommand("predict", "analytic predictions");
  predict->add_option("--k", k);
  predict->add_option("--mean-degree", mean_degree);
  auto* predict_weight = predict->add_subcommand("weight", "limit weight of the union");
  predict_weight->add_option("--k", k)->required();
  predict_weight->add_option("--a", slope)->required();
  predict_weight->add_option("--tol", [&quad_tol](const std::vector<std::string>& vals) {
    quad_tol = std::stod(vals.at(0));
    return true;
  });
  auto* predict_thresholds = predict->add_subcommand("thresholds", "gamma and deep thresholds");
  predict_thresholds->add_option("--k", k)->required();

  auto* experiment =
      app.add_subcommand("experiment", "Monte-Carlo comparison against analytic predictions");
  std::string experiment_kind;
  experiment->add_option("kind", experiment_kind, "weight|structure|rank|core|density")
      ->required();
  experiment->add_option("--n", n)->required();
  experiment->add_option("--k", k)->required();
  experiment->add_option("--trials", trials)->required();
  experiment->add_option("--seed", seed)->required();
  experiment->add_option("--degrees", degrees_text);
  experiment->add_option("--dist", dist_text);
  experiment->add_option("--csv", csv_path)->required();
  experiment->add_flag("--allow-large", allow_large);

  auto* process = app.add_subcommand("process", "random graph process trace");
  process->add_option("--n", n)->required();
  process->add_option("--k", k)->required();
  process->add_option("--checkpoints", checkpoints_text)->required();
  process->add_option("--seed", seed)->required();
  process->add_option("--csv", csv_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidArgs;
  }

  try {
    if (solve->parsed()) return cmd_solve(input, k, out_path, forests_prefix);
    if (rank->parsed()) return cmd_rank(input, k);
    if (comps->parsed()) return cmd_components(input, k);
    if (layers->parsed()) return cmd_layers(input, k);
    if (core->parsed()) return cmd_core(input, kappa);
    if (predict->parsed()) {
      if (predict_weight->parsed()) return cmd_predict_weight(k, slope, quad_tol);
      if (predict_thresholds->parsed()) return cmd_predict_thresholds(k);
      if (predict->count("--mean-degree") == 0)
        throw ktrees::InvalidArgument("predict: --mean-degree is required");
      return cmd_predict_table(k, mean_degree);
    }
    if (experiment->parsed()) {
      ktrees::experiments::ExperimentConfig cfg;
      cfg.kind = ktrees::experiments::parse_kind(experiment_kind);
      cfg.n = n;
      cfg.k = k;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.allow_large = allow_large;
      cfg.dist = ktrees::WeightDistribution::parse(dist_text);
      if (!degrees_text.empty()) cfg.degrees = parse_double_list(degrees_text);
      const auto records = ktrees::experiments::run_experiment(cfg);
      ktrees::experiments::emit_csv(records, csv_path);
      std::cout << "wrote " << records.size() << " records to " << csv_path << "\n";
      return kExitOk;
    }
    if (process->parsed()) {
      const auto checkpoints = parse_int_list(checkpoints_text);
      const ktrees::ProcessTrace trace = ktrees::run_process(n, k, checkpoints, seed);
      ktrees::experiments::emit_process_csv(trace, n, k, csv_path);
      std::cout << "wrote " << trace.checkpoints.size() << " checkpoints to " << csv_path
                << "\n";
      return kExitOk;
    }
  } catch (const ktrees::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ktrees::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalidArgs;
}
