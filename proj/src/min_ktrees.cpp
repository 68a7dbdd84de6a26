#include "ktrees/min_ktrees.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "ktrees/deep_components.hpp"
#include "ktrees/forest_family.hpp"

namespace ktrees {

Solution min_weight_union(const WeightedGraph& wg, int k) {
  if (k < 1) throw InvalidArgument("min_weight_union: k must be >= 1");
  const Graph& g = wg.graph;
  if (g.n < 1) throw InvalidArgument("min_weight_union: empty vertex set");
  if (!wg.weights.empty() && wg.weights.size() != g.edges.size())
    throw InvalidArgument("min_weight_union: weight count mismatch");

  const auto weight_of = [&](std::int64_t id) {
    return wg.weights.empty() ? 1.0 : wg.weights[id];
  };

  std::vector<std::int64_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const double wa = weight_of(a), wb = weight_of(b);
    if (wa != wb) return wa < wb;
    return a < b;
  });

  const std::int64_t target = static_cast<std::int64_t>(k) * (g.n - 1);
  ForestFamily fam(g.n, k);
  Solution sol;
  sol.k = k;
  for (const std::int64_t id : order) {
    if (fam.size() == target) break;
    const Edge& e = g.edges[id];
    if (fam.try_insert(e.u, e.v, id).inserted()) {
      sol.chosen_edges.push_back(id);
      sol.total_weight += weight_of(id);
    }
  }
  sol.feasible = fam.size() == target;
  for (const auto& forest : fam.extract_forests()) {
    sol.forests.emplace_back();
    for (const auto& ref : forest) sol.forests.back().push_back(ref.ext_id);
  }
  return sol;
}

namespace {

int dsu_find(std::vector<int>& d, int v) {
  while (d[v] != v) {
    d[v] = d[d[v]];
    v = d[v];
  }
  return v;
}

bool color_edges(const std::vector<Edge>& edges, int n, int k, std::size_t depth,
                 std::vector<std::vector<int>>& dsu, std::vector<int>& class_size) {
  if (depth == edges.size()) return true;
  for (int c = 0; c < k; ++c) {
    if (c > 0 && class_size[c - 1] == 0) break;  // identical classes: open in order
    if (class_size[c] == n - 1) continue;
    std::vector<int>& d = dsu[c];
    const int ra = dsu_find(d, edges[depth].u);
    const int rb = dsu_find(d, edges[depth].v);
    if (ra == rb) continue;
    const std::vector<int> saved = d;
    d[ra] = rb;
    ++class_size[c];
    if (color_edges(edges, n, k, depth + 1, dsu, class_size)) return true;
    --class_size[c];
    d = saved;
  }
  return false;
}

// can `edges` (exactly k(n-1) of them) be split into k classes, each an
// acyclic set of n-1 edges, i.e. a spanning tree?
bool splits_into_k_trees(const std::vector<Edge>& edges, int n, int k) {
  std::vector<std::vector<int>> dsu(k, std::vector<int>(n));
  for (auto& d : dsu) std::iota(d.begin(), d.end(), 0);
  std::vector<int> class_size(k, 0);
  return color_edges(edges, n, k, 0, dsu, class_size);
}

}  // namespace

std::optional<double> brute_force_min_union(const WeightedGraph& wg, int k) {
  if (k < 1) throw InvalidArgument("brute_force_min_union: k must be >= 1");
  const Graph& g = wg.graph;
  const int m = static_cast<int>(g.edges.size());
  if (m > 16) throw InstanceTooLarge("brute_force_min_union: more than 16 edges");
  if (!wg.weights.empty() && wg.weights.size() != g.edges.size())
    throw InvalidArgument("brute_force_min_union: weight count mismatch");
  const std::int64_t target = static_cast<std::int64_t>(k) * (g.n - 1);
  if (target > m) return std::nullopt;

  double best = std::numeric_limits<double>::infinity();
  std::vector<Edge> subset;
  for (std::uint32_t S = 0; S < (1u << m); ++S) {
    if (std::popcount(S) != target) continue;
    double weight = 0;
    subset.clear();
    for (int e = 0; e < m; ++e)
      if (S & (1u << e)) {
        subset.push_back(g.edges[e]);
        weight += wg.weights.empty() ? 1.0 : wg.weights[e];
      }
    if (weight >= best) continue;
    if (splits_into_k_trees(subset, g.n, k)) best = weight;
  }
  if (best == std::numeric_limits<double>::infinity()) return std::nullopt;
  return best;
}

ProcessTrace run_process(int n, int k, const std::vector<std::int64_t>& checkpoints,
                         std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("run_process: n must be >= 1");
  if (k < 1) throw InvalidArgument("run_process: k must be >= 1");
  const std::int64_t total = Graph::max_edges(n);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 0 || checkpoints[i] > total)
      throw InvalidArgument("run_process: checkpoint out of range");
    if (i > 0 && checkpoints[i] < checkpoints[i - 1])
      throw InvalidArgument("run_process: checkpoints must be sorted ascending");
  }

  ProcessTrace trace;
  if (checkpoints.empty()) return trace;
  const Graph g = gen_gnm(n, checkpoints.back(), seed);

  ForestFamily fam(n, k);
  std::int64_t inserted = 0;
  Graph prefix(n);
  for (const std::int64_t m : checkpoints) {
    while (inserted < m) {
      const Edge& e = g.edges[inserted];
      fam.try_insert(e.u, e.v, inserted);
      ++inserted;
    }
    prefix.edges.assign(g.edges.begin(), g.edges.begin() + m);
    const DeepPartition part = components(prefix, k);
    const CoreResult core = kcore(prefix, k + 1);
    ProcessCheckpoint cp;
    cp.m = m;
    cp.rank = fam.size();
    cp.largest_nontrivial_component = part.largest_nontrivial_size();
    cp.nontrivial_component_count = part.nontrivial_count();
    cp.core_size = static_cast<int>(core.vertices.size());
    cp.core_edges = core.induced_edge_count;
    trace.checkpoints.push_back(cp);
  }
  return trace;
}

}  // namespace ktrees
