#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ktrees/forest_family.hpp"
#include "test_support.hpp"

using namespace ktrees;

TEST_CASE("single edge into an empty family") {
  ForestFamily fam(4, 2);
  const auto out = fam.try_insert(0, 1, 0);
  CHECK(out.inserted());
  CHECK(out.exchanges.empty());
  CHECK(fam.size() == 1);
}

TEST_CASE("endpoint validation") {
  ForestFamily fam(4, 2);
  CHECK_THROWS_AS(fam.try_insert(0, 0), InvalidArgument);
  CHECK_THROWS_AS(fam.try_insert(0, 4), InvalidArgument);
  CHECK_THROWS_AS(fam.try_insert(-1, 2), InvalidArgument);
  CHECK_THROWS_AS(ForestFamily(4, 0), InvalidArgument);
}

TEST_CASE("K4 fills a k=2 family in any order; a duplicate is then dependent") {
  const Graph k4 = test_support::make_complete(4);
  std::vector<int> order = {0, 1, 2, 3, 4, 5};
  Rng rng(17);
  for (int perm = 0; perm < 12; ++perm) {
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.next_below(i)]);
    ForestFamily fam(4, 2);
    for (const int id : order) {
      const auto out = fam.try_insert(k4.edges[id].u, k4.edges[id].v, id);
      CHECK(out.inserted());
      fam.validate();
    }
    CHECK(fam.size() == 6);

    const auto dup = fam.try_insert(0, 1, 99);
    CHECK(!dup.inserted());
    CHECK(dup.dependent_vertices == std::vector<int>{0, 1, 2, 3});
    CHECK(fam.size() == 6);

    // the two forests are edge-disjoint spanning trees of K4
    const auto forests = fam.extract_forests();
    REQUIRE(forests.size() == 2);
    std::set<std::int64_t> ids;
    for (const auto& forest : forests) {
      std::vector<Edge> edges;
      for (const auto& ref : forest) {
        edges.push_back({ref.u, ref.v});
        ids.insert(ref.ext_id);
      }
      CHECK(test_support::is_spanning_tree(edges, 4));
    }
    CHECK(ids.size() == 6);
  }
}

TEST_CASE("rank_of examples") {
  CHECK(rank_of(test_support::make_complete(3), 2) == 3);
  CHECK(rank_of(test_support::make_complete(4), 1) == 3);

  Graph k4dup = test_support::make_complete(4);
  k4dup.add_edge(0, 1);
  CHECK(rank_of(k4dup, 2) == 6);
}

TEST_CASE("brute_force_rank examples and guard") {
  CHECK(brute_force_rank(test_support::make_complete(3), 2) == 3);
  CHECK(brute_force_rank(test_support::make_complete(4), 2) == 6);

  Graph bowtie(5);  // two triangles sharing vertex 0
  bowtie.add_edge(0, 1);
  bowtie.add_edge(0, 2);
  bowtie.add_edge(1, 2);
  bowtie.add_edge(0, 3);
  bowtie.add_edge(0, 4);
  bowtie.add_edge(3, 4);
  CHECK(brute_force_rank(bowtie, 1) == 4);

  CHECK_THROWS_AS(brute_force_rank(test_support::make_complete(7), 2), InstanceTooLarge);
}

TEST_CASE("oracle equivalence on 500+ random graphs") {
  Rng rng(42);
  int checked = 0;
  for (int trial = 0; trial < 510; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(6));
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const int m = static_cast<int>(rng.next_below(13));
    const Graph g = (trial % 2 == 0)
                        ? test_support::random_simple_graph(
                              rng, n, std::min<int>(m, Graph::max_edges(n)))
                        : test_support::random_multigraph(rng, std::max(n, 2), m);
    CHECK(rank_of(g, k) == brute_force_rank(g, k));
    ++checked;
  }
  CHECK(checked >= 500);
}

TEST_CASE("rank is invariant under edge order") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(4));
    const Graph g = test_support::random_multigraph(rng, n, 10);
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const std::int64_t reference = rank_of(g, k);
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    for (int perm = 0; perm < 20; ++perm) {
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);
      Graph shuffled(n);
      for (const int id : order) shuffled.add_edge(g.edges[id].u, g.edges[id].v);
      CHECK(rank_of(shuffled, k) == reference);
    }
  }
}

TEST_CASE("rank function is submodular on random instances") {
  Rng rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(4));
    const Graph g = test_support::random_multigraph(rng, n, 12);
    const int k = 1 + static_cast<int>(rng.next_below(3));

    Graph ga(n), gb(n), gu(n), gi(n);
    for (const Edge& e : g.edges) {
      const bool in_a = rng.next_below(2) == 0;
      const bool in_b = rng.next_below(2) == 0;
      if (in_a) ga.add_edge(e.u, e.v);
      if (in_b) gb.add_edge(e.u, e.v);
      if (in_a || in_b) gu.add_edge(e.u, e.v);
      if (in_a && in_b) gi.add_edge(e.u, e.v);
    }
    CHECK(rank_of(ga, k) + rank_of(gb, k) >= rank_of(gu, k) + rank_of(gi, k));
  }
}

TEST_CASE("rank grows by 0 or 1 per offered edge and never decreases") {
  Rng rng(45);
  const Graph g = test_support::random_multigraph(rng, 8, 40);
  for (const int k : {1, 2, 3}) {
    ForestFamily fam(8, k);
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto out = fam.try_insert(g.edges[i].u, g.edges[i].v, i);
      const std::int64_t now = fam.size();
      CHECK(now - prev == (out.inserted() ? 1 : 0));
      prev = now;
    }
  }
}

TEST_CASE("k=1 rank equals n minus component count") {
  Rng rng(46);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(8));
    const Graph g = test_support::random_simple_graph(
        rng, n, static_cast<int>(rng.next_below(Graph::max_edges(n) + 1)));
    CHECK(rank_of(g, 1) == n - test_support::count_components(g));
  }
}

TEST_CASE("extract_forests: empty family and structural invariants") {
  const ForestFamily empty(5, 3);
  const auto forests = empty.extract_forests();
  REQUIRE(forests.size() == 3);
  for (const auto& f : forests) CHECK(f.empty());

  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(4));
    const int k = 1 + static_cast<int>(rng.next_below(3));
    const Graph g = test_support::random_multigraph(rng, n, 16);
    ForestFamily fam(n, k);
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      fam.try_insert(g.edges[i].u, g.edges[i].v, i);
    fam.validate();

    std::set<std::int64_t> seen;
    std::int64_t total = 0;
    for (const auto& forest : fam.extract_forests()) {
      std::vector<Edge> edges;
      for (const auto& ref : forest) {
        edges.push_back({ref.u, ref.v});
        CHECK(seen.insert(ref.ext_id).second);  // pairwise disjoint
        ++total;
      }
      CHECK(test_support::is_forest(edges, n));
    }
    CHECK(total == fam.size());
  }
}

TEST_CASE("probe_dependent never mutates the family") {
  const Graph k4 = test_support::make_complete(4);
  ForestFamily fam(4, 2);
  for (std::size_t i = 0; i < k4.edges.size(); ++i)
    fam.try_insert(k4.edges[i].u, k4.edges[i].v, i);

  const auto before = fam.extract_forests();
  std::vector<int> witness;
  CHECK(fam.probe_dependent(2, 3, &witness));
  CHECK(witness == std::vector<int>{0, 1, 2, 3});
  CHECK(fam.size() == 6);
  const auto after = fam.extract_forests();
  for (int f = 0; f < 2; ++f) {
    REQUIRE(before[f].size() == after[f].size());
    for (std::size_t i = 0; i < before[f].size(); ++i)
      CHECK(before[f][i].ext_id == after[f][i].ext_id);
  }
  fam.validate();

  // independent probe: still no mutation
  ForestFamily sparse(4, 2);
  sparse.try_insert(0, 1, 0);
  CHECK(!sparse.probe_dependent(0, 1));
  CHECK(sparse.size() == 1);
  sparse.validate();
}

TEST_CASE("insertion accepts exactly while independent: forced exchange scenario") {
  // two disjoint K4 blocks joined afterwards; the join edges must all be
  // accepted (rank 14 = 2*(8-1)), which needs exchanges once direct slots run out
  Graph g(8);
  for (int base : {0, 4})
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) g.add_edge(base + u, base + v);
  g.add_edge(0, 4);
  g.add_edge(1, 5);
  ForestFamily fam(8, 2);
  int accepted = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (fam.try_insert(g.edges[i].u, g.edges[i].v, i).inserted()) ++accepted;
    fam.validate();
  }
  CHECK(accepted == 14);
  CHECK(fam.known_dependent(2, 7));
  CHECK(!fam.try_insert(3, 6, 99).inserted());
}
