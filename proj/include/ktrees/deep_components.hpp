#pragma once

#include <vector>

#include "ktrees/graph.hpp"

namespace ktrees {

/// Partition of the vertices into k-deeply connected components: maximal
/// vertex sets whose induced subgraphs contain k edge-disjoint spanning
/// trees. Singletons are explicit so the partition covers all of V.
struct DeepPartition {
  int k = 1;
  std::vector<int> component_id;             // vertex -> component index
  std::vector<std::vector<int>> components;  // sorted vertex lists, indexed by id
  std::vector<int> nontrivial;               // indices of components with >= 2 vertices

  int nontrivial_count() const { return static_cast<int>(nontrivial.size()); }
  int largest_nontrivial_size() const {
    int best = 0;
    for (int idx : nontrivial)
      best = std::max(best, static_cast<int>(components[idx].size()));
    return best;
  }
};

/// Layered form of a k-deeply connected graph: layer 0 is the (k+1)-core;
/// every vertex of a higher layer has exactly k edges into lower layers, at
/// least one of them into the layer directly below.
struct Layers {
  std::vector<std::vector<int>> layers;       // layer -> sorted vertices
  std::vector<std::vector<Edge>> down_edges;  // vertex -> its k down-edges (empty on layer 0)
};

/// Decompose into k-deeply connected components. Builds a maximal
/// independent set over all edges, then probes a duplicate of every edge:
/// the duplicate is dependent exactly when both endpoints already lie in one
/// k-deeply connected component, and each dependent probe's witness set is
/// merged. For k=1 this degenerates to ordinary connected components.
DeepPartition components(const Graph& g, int k);

/// True iff k edge-disjoint spanning trees fit, i.e. the rank equals k(n-1).
bool is_k_deeply_connected(const Graph& g, int k);

/// Normal representation: peel degree-k vertices (lowest id first) down to
/// the (k+1)-core, then assign each peeled vertex the layer one above the
/// highest layer its k remaining edges reach.
Layers normal_representation(const Graph& g, int k);

}  // namespace ktrees
