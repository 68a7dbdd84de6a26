#include "ktrees/deep_components.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ktrees/disjoint_sets.hpp"
#include "ktrees/forest_family.hpp"

namespace ktrees {

DeepPartition components(const Graph& g, int k) {
  if (k < 1) throw InvalidArgument("components: k must be >= 1");
  const int n = g.n;
  ForestFamily fam(n, k);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    fam.try_insert(g.edges[i].u, g.edges[i].v, static_cast<std::int64_t>(i));

  DisjointSets ds(n);
  std::vector<int> witness;
  for (const Edge& e : g.edges) {
    if (ds.same(e.u, e.v)) continue;
    witness.clear();
    if (fam.probe_dependent(e.u, e.v, &witness))
      for (std::size_t i = 1; i < witness.size(); ++i) ds.unite(witness[0], witness[i]);
  }

  DeepPartition part;
  part.k = k;
  part.component_id.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int root = ds.find(v);
    if (id_of_root[root] == -1) {
      id_of_root[root] = static_cast<int>(part.components.size());
      part.components.emplace_back();
    }
    part.component_id[v] = id_of_root[root];
    part.components[id_of_root[root]].push_back(v);
  }
  for (std::size_t i = 0; i < part.components.size(); ++i)
    if (part.components[i].size() >= 2) part.nontrivial.push_back(static_cast<int>(i));
  return part;
}

bool is_k_deeply_connected(const Graph& g, int k) {
  if (k < 1) throw InvalidArgument("is_k_deeply_connected: k must be >= 1");
  if (g.n < 1) throw InvalidArgument("is_k_deeply_connected: empty vertex set");
  return rank_of(g, k) == static_cast<std::int64_t>(k) * (g.n - 1);
}

Layers normal_representation(const Graph& g, int k) {
  if (k < 2) throw InvalidArgument("normal_representation: k must be >= 2");
  if (g.n < 2) throw DegenerateInput("normal_representation: fewer than 2 vertices");
  if (!is_k_deeply_connected(g, k))
    throw NotDeeplyConnected("normal_representation: graph is not k-deeply connected");

  const CoreResult core = kcore(g, k + 1);
  if (core.vertices.empty())
    throw DegenerateInput("normal_representation: empty (k+1)-core (degenerate multigraph)");

  const auto adj = g.adjacency();
  auto deg = g.degrees();
  std::vector<char> alive(g.n, 1);
  std::set<int> candidates;
  for (int v = 0; v < g.n; ++v)
    if (deg[v] == k) candidates.insert(v);

  Layers rep;
  rep.down_edges.assign(g.n, {});
  std::vector<int> peel_order;
  while (!candidates.empty()) {
    const int v = *candidates.begin();
    candidates.erase(candidates.begin());
    if (!alive[v]) continue;
    if (deg[v] != k)
      throw std::logic_error("normal_representation: peel invariant violated");
    for (const auto& nb : adj[v]) {
      const int to = nb.first;
      if (!alive[to]) continue;
      rep.down_edges[v].push_back({v, to});
      if (--deg[to] == k) candidates.insert(to);
    }
    alive[v] = 0;
    peel_order.push_back(v);
  }

  std::vector<int> layer(g.n, 0);
  int max_layer = 0;
  for (auto it = peel_order.rbegin(); it != peel_order.rend(); ++it) {
    const int v = *it;
    int below = 0;
    for (const Edge& e : rep.down_edges[v]) below = std::max(below, layer[e.v]);
    layer[v] = below + 1;
    max_layer = std::max(max_layer, layer[v]);
  }

  rep.layers.assign(max_layer + 1, {});
  for (int v = 0; v < g.n; ++v) rep.layers[layer[v]].push_back(v);
  return rep;
}

}  // namespace ktrees
