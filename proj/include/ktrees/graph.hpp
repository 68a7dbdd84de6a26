#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ktrees/errors.hpp"
#include "ktrees/rng.hpp"

namespace ktrees {

struct Edge {
  int u = 0;
  int v = 0;
};

inline bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }

/// Undirected multigraph on vertices 0..n-1. Parallel edges are allowed and
/// edge order is significant (insertion order is the process order);
/// self-loops are rejected.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  Graph() = default;
  explicit Graph(int vertex_count);

  void add_edge(int u, int v);

  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }

  static std::int64_t max_edges(int n) {
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
  }

  // adjacency index, built on demand: vertex -> list of (neighbor, edge id)
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;

  std::vector<std::int64_t> degrees() const;
};

struct WeightedGraph {
  Graph graph;
  std::vector<double> weights;  // aligned with graph.edges; empty = unweighted
};

struct WeightDistribution {
  enum class Kind { Uniform01, Uniform, Exponential };

  Kind kind = Kind::Uniform01;
  double param = 1.0;  // b for Uniform(0,b), rate for Exponential

  // density slope a at 0+: Pr[X <= eps] ~ a*eps
  double density_slope() const;
  double sample(Rng& rng) const;
  std::string to_string() const;

  // accepts "uniform01", "uniform:<b>", "exp:<rate>"
  static WeightDistribution parse(const std::string& text);
};

struct CoreResult {
  int kappa = 0;
  std::vector<int> vertices;  // sorted ascending
  std::int64_t induced_edge_count = 0;
  double density = 0.0;  // 2E/|V|, 0 if empty

  std::int64_t size() const { return static_cast<std::int64_t>(vertices.size()); }
};

/// Uniform random graph G(n, m): exactly m distinct pairs, uniform over all
/// m-subsets, in uniform random order. Edges are drawn sequentially without
/// replacement from one stream, so for m' < m the first m' edges of
/// gen_gnm(n, m, seed) equal gen_gnm(n, m', seed) exactly (process prefixes).
Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed);

/// Binomial random graph G(n, p): each pair present independently with
/// probability p. Edges come out in lexicographic pair order.
Graph gen_gnp(int n, double p, std::uint64_t seed);

/// Complete graph with i.i.d. weights from dist, edge sequence sorted
/// ascending by (weight, edge id) so that the m-prefix is distributed as
/// G(n, m).
WeightedGraph gen_weighted_complete(int n, const WeightDistribution& dist, std::uint64_t seed);

/// kappa-core: largest induced subgraph of minimum degree >= kappa, by
/// iterative peeling. An empty core is a valid result.
CoreResult kcore(const Graph& g, int kappa);

// Edge-list text format: header "n <N>", then "u v" or "u v w" lines,
// '#' starts a comment. Weight columns must be used consistently.
WeightedGraph read_edge_list(std::istream& in, const std::string& context);
WeightedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<double>* weights = nullptr);
void write_edge_list_file(const std::string& path, const Graph& g,
                          const std::vector<double>* weights = nullptr);

}  // namespace ktrees
