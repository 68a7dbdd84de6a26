#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ktrees/graph.hpp"

namespace ktrees {

struct Solution {
  int k = 1;
  std::vector<std::int64_t> chosen_edges;  // ids into the input edge list, acceptance order
  double total_weight = 0.0;
  std::vector<std::vector<std::int64_t>> forests;  // edge ids per forest
  bool feasible = false;
};

struct ProcessCheckpoint {
  std::int64_t m = 0;
  std::int64_t rank = 0;
  int largest_nontrivial_component = 0;  // 0 when there is none
  int nontrivial_component_count = 0;
  int core_size = 0;           // (k+1)-core
  std::int64_t core_edges = 0;
};

struct ProcessTrace {
  std::vector<ProcessCheckpoint> checkpoints;
};

/// Generalized Kruskal: edges sorted ascending by (weight, id) are offered to
/// the union-matroid oracle until k(n-1) are accepted. Infeasible instances
/// (the graph holds no k edge-disjoint spanning trees) come back with
/// feasible=false and the maximal independent set that was reached.
Solution min_weight_union(const WeightedGraph& wg, int k);

/// Exhaustive optimum oracle: minimum weight over edge subsets of size
/// k(n-1) that split into k edge-disjoint spanning trees, the split checked
/// by a backtracking k-coloring. nullopt = infeasible. Guarded to <= 16 edges.
std::optional<double> brute_force_min_union(const WeightedGraph& wg, int k);

/// Random graph process: insert a uniform random edge permutation one edge at
/// a time, tracking rank incrementally; at each checkpoint m the prefix graph
/// is decomposed from scratch into k-deeply connected components and its
/// (k+1)-core is peeled.
ProcessTrace run_process(int n, int k, const std::vector<std::int64_t>& checkpoints,
                         std::uint64_t seed);

}  // namespace ktrees
