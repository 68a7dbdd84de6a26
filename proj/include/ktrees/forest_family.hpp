#pragma once

#include <cstdint>
#include <vector>

#include "ktrees/graph.hpp"

namespace ktrees {

/// Maximal independent edge set of the union of k graphic matroids over a
/// fixed vertex set, maintained as k pairwise edge-disjoint forests.
///
/// Insertion runs the classical matroid-union augmenting search: from the
/// offered edge, breadth-first over "edge x could replace edge y in forest i"
/// moves until some forest accepts an edge outright, then the shortest
/// exchange chain is applied. When the search exhausts without an augmenting
/// chain the offered edge is dependent and the visited vertex set is a
/// witness: the current forests restricted to it are spanning trees of it.
///
/// Witness sets are remembered in a union-find cache. Dependence relative to
/// a growing independent set is monotone, so a cached verdict stays valid for
/// the lifetime of the family; the cache turns repeated probes inside an
/// already-discovered dependent clump into O(alpha) lookups.
///
/// Single-writer: concurrent mutation is not supported, distinct families on
/// distinct threads are fine.
class ForestFamily {
 public:
  enum class Status { Inserted, Dependent };

  struct Move {
    std::int64_t ext_id;  // caller id of the relocated edge
    int from_forest;
    int to_forest;
  };

  struct EdgeRef {
    int u;
    int v;
    std::int64_t ext_id;
  };

  struct InsertOutcome {
    Status status = Status::Dependent;
    // exchange sequence applied, in application order; empty when the edge
    // went straight into a forest
    std::vector<Move> exchanges;
    // Dependent only: sorted witness vertex set. For a fresh search this is
    // the closed set reached by the exchange search; for a cached verdict it
    // is the known dependent clump containing both endpoints.
    std::vector<int> dependent_vertices;

    bool inserted() const { return status == Status::Inserted; }
  };

  ForestFamily(int n, int k);

  /// Offer edge (u, v). On Inserted the family gains the edge (|members|
  /// grows by one); on Dependent the family is untouched.
  InsertOutcome try_insert(int u, int v, std::int64_t ext_id = -1);

  /// Dependence test that never commits, so duplicates of member edges can be
  /// probed safely. Dependent verdicts still feed the witness cache.
  bool probe_dependent(int u, int v, std::vector<int>* witness = nullptr) const;

  /// True when u and v are already known to lie in a common dependent clump
  /// (a sufficient, monotone certificate of dependence).
  bool known_dependent(int u, int v) const;

  std::int64_t size() const { return static_cast<std::int64_t>(members_.size()); }
  int vertex_count() const { return n_; }
  int tree_multiplicity() const { return k_; }

  /// The k disjoint forests; within each forest edges appear in insertion
  /// order of the family.
  std::vector<std::vector<EdgeRef>> extract_forests() const;

  /// Full structural check (acyclicity, disjointness, index coherence);
  /// throws std::logic_error on violation. Test support.
  void validate() const;

 private:
  struct Member {
    int u;
    int v;
    std::int64_t ext_id;
    int forest;
  };

  struct Forest {
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (peer, member)
    std::vector<int> parent;
    std::vector<int> parent_edge;
    std::vector<int> depth;
    std::vector<int> root;
  };

  struct SearchHit {
    int element;  // 0 = offered edge, m+1 = member m
    int forest;
  };

  void check_endpoints(int u, int v) const;
  bool search(int u, int v, SearchHit* hit) const;
  void apply_augment(const SearchHit& hit, int u, int v, std::int64_t ext_id,
                     std::vector<Move>* moves);
  void rebuild_forest(int f);
  void collect_circuit(int f, int u, int v, std::vector<int>* members_on_path) const;
  void adj_remove(int f, int member);
  void adj_add(int f, int member);

  int clump_find(int v) const;
  void clump_union(const std::vector<int>& vertices) const;
  std::vector<int> clump_class(int v) const;

  int n_;
  int k_;
  std::vector<Member> members_;
  std::vector<Forest> forests_;

  // dependent-clump cache; updated by const probes as well
  mutable std::vector<int> clump_parent_;
  mutable std::vector<std::vector<int>> clump_members_;

  // search scratch, epoch-stamped so probes stay allocation-free
  mutable std::vector<int> elem_stamp_;
  mutable std::vector<int> elem_pred_;
  mutable std::vector<int> elem_pred_forest_;
  mutable std::vector<int> vert_stamp_;
  mutable std::vector<int> queue_;
  mutable std::vector<int> path_scratch_;
  mutable std::vector<int> visited_vertices_;
  mutable int epoch_ = 0;
};

/// Rank of a graph in the union matroid: every edge is offered in sequence
/// order to a fresh family; the result is the final member count.
std::int64_t rank_of(const Graph& g, int k);

/// Exhaustive rank oracle: maximum size over edge subsets that contain no
/// subgraph with m vertices and more than k(m-1) edges, the density criterion
/// checked over all vertex subsets. Guarded to small instances.
int brute_force_rank(const Graph& g, int k);

}  // namespace ktrees
