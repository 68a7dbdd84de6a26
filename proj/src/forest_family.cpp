#include "ktrees/forest_family.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "ktrees/disjoint_sets.hpp"

namespace ktrees {

ForestFamily::ForestFamily(int n, int k) : n_(n), k_(k) {
  if (n < 0) throw InvalidArgument("ForestFamily: negative vertex count");
  if (k < 1) throw InvalidArgument("ForestFamily: k must be >= 1");
  forests_.resize(k);
  for (Forest& f : forests_) {
    f.adj.resize(n);
    f.parent.assign(n, -1);
    f.parent_edge.assign(n, -1);
    f.depth.assign(n, 0);
    f.root.resize(n);
    for (int v = 0; v < n; ++v) f.root[v] = v;
  }
  clump_parent_.resize(n);
  clump_members_.resize(n);
  for (int v = 0; v < n; ++v) {
    clump_parent_[v] = v;
    clump_members_[v] = {v};
  }
  vert_stamp_.assign(n, 0);
}

void ForestFamily::check_endpoints(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw InvalidArgument("ForestFamily: endpoint out of range");
  if (u == v) throw InvalidArgument("ForestFamily: self-loop");
}

int ForestFamily::clump_find(int v) const {
  while (clump_parent_[v] != v) {
    clump_parent_[v] = clump_parent_[clump_parent_[v]];
    v = clump_parent_[v];
  }
  return v;
}

void ForestFamily::clump_union(const std::vector<int>& vertices) const {
  if (vertices.empty()) return;
  int root = clump_find(vertices[0]);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    int other = clump_find(vertices[i]);
    if (other == root) continue;
    if (clump_members_[other].size() > clump_members_[root].size()) std::swap(root, other);
    clump_parent_[other] = root;
    auto& big = clump_members_[root];
    auto& small = clump_members_[other];
    big.insert(big.end(), small.begin(), small.end());
    small.clear();
    small.shrink_to_fit();
  }
}

std::vector<int> ForestFamily::clump_class(int v) const {
  std::vector<int> out = clump_members_[clump_find(v)];
  std::sort(out.begin(), out.end());
  return out;
}

bool ForestFamily::known_dependent(int u, int v) const {
  check_endpoints(u, v);
  return clump_find(u) == clump_find(v);
}

void ForestFamily::collect_circuit(int f, int u, int v, std::vector<int>* members_on_path) const {
  members_on_path->clear();
  const Forest& F = forests_[f];
  int a = u;
  int b = v;
  while (F.depth[a] > F.depth[b]) {
    members_on_path->push_back(F.parent_edge[a]);
    a = F.parent[a];
  }
  while (F.depth[b] > F.depth[a]) {
    members_on_path->push_back(F.parent_edge[b]);
    b = F.parent[b];
  }
  while (a != b) {
    members_on_path->push_back(F.parent_edge[a]);
    members_on_path->push_back(F.parent_edge[b]);
    a = F.parent[a];
    b = F.parent[b];
  }
}

bool ForestFamily::search(int u0, int v0, SearchHit* hit) const {
  ++epoch_;
  const std::size_t m = members_.size();
  if (elem_stamp_.size() < m + 1) {
    elem_stamp_.resize(m + 1, 0);
    elem_pred_.resize(m + 1, 0);
    elem_pred_forest_.resize(m + 1, 0);
  }
  queue_.clear();
  visited_vertices_.clear();

  auto mark_vertex = [&](int v) {
    if (vert_stamp_[v] != epoch_) {
      vert_stamp_[v] = epoch_;
      visited_vertices_.push_back(v);
    }
  };

  elem_stamp_[0] = epoch_;
  queue_.push_back(0);
  mark_vertex(u0);
  mark_vertex(v0);

  for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
    const int e = queue_[qi];
    const int ue = e == 0 ? u0 : members_[e - 1].u;
    const int ve = e == 0 ? v0 : members_[e - 1].v;
    const int own = e == 0 ? -1 : members_[e - 1].forest;
    for (int f = 0; f < k_; ++f) {
      if (f == own) continue;
      if (forests_[f].root[ue] != forests_[f].root[ve]) {
        hit->element = e;
        hit->forest = f;
        return true;
      }
    }
    for (int f = 0; f < k_; ++f) {
      if (f == own) continue;
      collect_circuit(f, ue, ve, &path_scratch_);
      for (const int member : path_scratch_) {
        const int el = member + 1;
        if (elem_stamp_[el] == epoch_) continue;
        elem_stamp_[el] = epoch_;
        elem_pred_[el] = e;
        elem_pred_forest_[el] = f;
        queue_.push_back(el);
        mark_vertex(members_[member].u);
        mark_vertex(members_[member].v);
      }
    }
  }
  return false;
}

void ForestFamily::adj_remove(int f, int member) {
  const Member& M = members_[member];
  for (int side = 0; side < 2; ++side) {
    auto& list = forests_[f].adj[side == 0 ? M.u : M.v];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].second == member) {
        list[i] = list.back();
        list.pop_back();
        break;
      }
    }
  }
}

void ForestFamily::adj_add(int f, int member) {
  const Member& M = members_[member];
  forests_[f].adj[M.u].emplace_back(M.v, member);
  forests_[f].adj[M.v].emplace_back(M.u, member);
}

void ForestFamily::rebuild_forest(int f) {
  Forest& F = forests_[f];
  F.parent.assign(n_, -1);
  F.parent_edge.assign(n_, -1);
  F.depth.assign(n_, 0);
  F.root.assign(n_, -1);
  std::vector<int>& bfs = path_scratch_;
  for (int start = 0; start < n_; ++start) {
    if (F.root[start] != -1) continue;
    F.root[start] = start;
    bfs.clear();
    bfs.push_back(start);
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      const int v = bfs[i];
      for (const auto& [to, member] : F.adj[v]) {
        if (F.root[to] != -1) continue;
        F.root[to] = start;
        F.parent[to] = v;
        F.parent_edge[to] = member;
        F.depth[to] = F.depth[v] + 1;
        bfs.push_back(to);
      }
    }
  }
}

void ForestFamily::apply_augment(const SearchHit& hit, int u, int v, std::int64_t ext_id,
                                 std::vector<Move>* moves) {
  std::vector<char> touched(k_, 0);
  int element = hit.element;
  int dest = hit.forest;
  touched[dest] = 1;
  while (element != 0) {
    const int member = element - 1;
    const int from = members_[member].forest;
    adj_remove(from, member);
    members_[member].forest = dest;
    adj_add(dest, member);
    moves->push_back({members_[member].ext_id, from, dest});
    touched[from] = 1;
    dest = from;
    element = elem_pred_[element];
  }
  const int new_member = static_cast<int>(members_.size());
  members_.push_back({u, v, ext_id, dest});
  adj_add(dest, new_member);
  touched[dest] = 1;
  for (int f = 0; f < k_; ++f)
    if (touched[f]) rebuild_forest(f);
}

ForestFamily::InsertOutcome ForestFamily::try_insert(int u, int v, std::int64_t ext_id) {
  check_endpoints(u, v);
  InsertOutcome out;
  if (clump_find(u) == clump_find(v)) {
    out.status = Status::Dependent;
    out.dependent_vertices = clump_class(u);
    return out;
  }
  SearchHit hit;
  if (search(u, v, &hit)) {
    out.status = Status::Inserted;
    apply_augment(hit, u, v, ext_id, &out.exchanges);
    return out;
  }
  out.status = Status::Dependent;
  out.dependent_vertices = visited_vertices_;
  std::sort(out.dependent_vertices.begin(), out.dependent_vertices.end());
  clump_union(visited_vertices_);
  return out;
}

bool ForestFamily::probe_dependent(int u, int v, std::vector<int>* witness) const {
  check_endpoints(u, v);
  if (clump_find(u) == clump_find(v)) {
    if (witness) *witness = clump_class(u);
    return true;
  }
  SearchHit hit;
  if (search(u, v, &hit)) return false;
  if (witness) {
    *witness = visited_vertices_;
    std::sort(witness->begin(), witness->end());
  }
  clump_union(visited_vertices_);
  return true;
}

std::vector<std::vector<ForestFamily::EdgeRef>> ForestFamily::extract_forests() const {
  std::vector<std::vector<EdgeRef>> out(k_);
  for (const Member& M : members_) out[M.forest].push_back({M.u, M.v, M.ext_id});
  return out;
}

void ForestFamily::validate() const {
  std::size_t adjacency_edges = 0;
  for (int f = 0; f < k_; ++f) {
    DisjointSets ds(n_);
    const Forest& F = forests_[f];
    for (int v = 0; v < n_; ++v) {
      for (const auto& [to, member] : F.adj[v]) {
        if (member < 0 || member >= static_cast<int>(members_.size()))
          throw std::logic_error("ForestFamily: bad member index in adjacency");
        if (members_[member].forest != f)
          throw std::logic_error("ForestFamily: adjacency/forest field mismatch");
        if (v < to) {
          ++adjacency_edges;
          if (!ds.unite(v, to)) throw std::logic_error("ForestFamily: cycle in forest");
        }
      }
    }
    for (int v = 0; v < n_; ++v)
      for (int w = 0; w < n_; ++w)
        if ((F.root[v] == F.root[w]) != ds.same(v, w))
          throw std::logic_error("ForestFamily: stale root index");
  }
  if (adjacency_edges != members_.size())
    throw std::logic_error("ForestFamily: member count mismatch");
}

std::int64_t rank_of(const Graph& g, int k) {
  if (k < 1) throw InvalidArgument("rank_of: k must be >= 1");
  ForestFamily fam(g.n, k);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    fam.try_insert(g.edges[i].u, g.edges[i].v, static_cast<std::int64_t>(i));
  return fam.size();
}

int brute_force_rank(const Graph& g, int k) {
  if (k < 1) throw InvalidArgument("brute_force_rank: k must be >= 1");
  const int m = static_cast<int>(g.edges.size());
  if (m > 20) throw InstanceTooLarge("brute_force_rank: more than 20 edges");
  if (m == 0) return 0;

  // compress to the vertex support of the edge set
  std::vector<int> support;
  support.reserve(2 * m);
  for (const Edge& e : g.edges) {
    support.push_back(e.u);
    support.push_back(e.v);
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const int s = static_cast<int>(support.size());
  if (s > 20) throw InstanceTooLarge("brute_force_rank: vertex support too large");
  std::vector<int> local(g.n, -1);
  for (int i = 0; i < s; ++i) local[support[i]] = i;

  // one (edge mask, k(|U|-1)) pair per vertex subset U with |U| >= 2
  std::vector<std::pair<std::uint32_t, int>> criteria;
  for (std::uint32_t U = 1; U < (1u << s); ++U) {
    const int size = std::popcount(U);
    if (size < 2) continue;
    std::uint32_t emask = 0;
    for (int e = 0; e < m; ++e) {
      const std::uint32_t a = 1u << local[g.edges[e].u];
      const std::uint32_t b = 1u << local[g.edges[e].v];
      if ((U & a) && (U & b)) emask |= 1u << e;
    }
    if (emask != 0) criteria.emplace_back(emask, k * (size - 1));
  }

  int best = 0;
  for (std::uint32_t S = 0; S < (1u << m); ++S) {
    const int size = std::popcount(S);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& [emask, bound] : criteria) {
      if (std::popcount(S & emask) > bound) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

}  // namespace ktrees
