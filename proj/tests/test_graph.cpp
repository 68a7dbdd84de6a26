#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "ktrees/graph.hpp"
#include "ktrees/rng.hpp"
#include "test_support.hpp"

using namespace ktrees;

namespace {

std::set<std::pair<int, int>> edge_set(const Graph& g) {
  std::set<std::pair<int, int>> out;
  for (const Edge& e : g.edges) out.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return out;
}

}  // namespace

TEST_CASE("graph construction rejects bad edges") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0), InvalidArgument);
  CHECK_THROWS_AS(g.add_edge(0, 3), InvalidArgument);
  CHECK_THROWS_AS(g.add_edge(-1, 1), InvalidArgument);
  g.add_edge(0, 1);
  g.add_edge(0, 1);  // parallel edges allowed
  CHECK(g.edge_count() == 2);
}

TEST_CASE("rng streams are reproducible and child streams are distinct") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  std::set<std::uint64_t> first_values;
  for (int t = 0; t < 100; ++t) {
    Rng child = Rng(777).child(t);
    first_values.insert(child.next_u64());
  }
  CHECK(first_values.size() == 100);

  // child derivation ignores parent consumption
  Rng parent(9);
  parent.next_u64();
  CHECK(parent.child(3).next_u64() == Rng(9).child(3).next_u64());
}

TEST_CASE("gen_gnm: forced complete graph, empty graph, determinism") {
  const Graph k4 = gen_gnm(4, 6, 1);
  CHECK(k4.edge_count() == 6);
  CHECK(edge_set(k4).size() == 6);

  CHECK(gen_gnm(3, 0, 99).edge_count() == 0);

  const Graph a = gen_gnm(10, 15, 7);
  const Graph b = gen_gnm(10, 15, 7);
  CHECK(a.edges.size() == 15);
  CHECK(edge_set(a).size() == 15);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) CHECK(a.edges[i] == b.edges[i]);

  CHECK_THROWS_AS(gen_gnm(4, 7, 0), InvalidArgument);
  CHECK_THROWS_AS(gen_gnm(4, -1, 0), InvalidArgument);
}

TEST_CASE("gen_gnm prefixes of one seed are the smaller instance") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Graph big = gen_gnm(30, 120, seed);
    const Graph small = gen_gnm(30, 45, seed);
    for (int i = 0; i < 45; ++i) CHECK(big.edges[i] == small.edges[i]);
  }
}

TEST_CASE("gen_gnp: degenerate probabilities and mean edge count") {
  CHECK(gen_gnp(5, 0.0, 4).edge_count() == 0);
  const Graph k5 = gen_gnp(5, 1.0, 4);
  CHECK(k5.edge_count() == 10);
  CHECK(edge_set(k5).size() == 10);
  CHECK_THROWS_AS(gen_gnp(5, -0.1, 0), InvalidArgument);
  CHECK_THROWS_AS(gen_gnp(5, 1.5, 0), InvalidArgument);

  // binomial mean over 100 seeds, 3 sigma of the mean
  const int n = 2000;
  const double p = 3.0 / n;
  const double expected = static_cast<double>(Graph::max_edges(n)) * p;
  const double sigma_mean =
      std::sqrt(static_cast<double>(Graph::max_edges(n)) * p * (1 - p) / 100.0);
  double sum = 0;
  for (int s = 0; s < 100; ++s) sum += static_cast<double>(gen_gnp(n, p, 1000 + s).edge_count());
  CHECK(std::abs(sum / 100 - expected) <= 3 * sigma_mean);
}

TEST_CASE("gen_weighted_complete: shape, order, empirical cdf") {
  const WeightedGraph tiny = gen_weighted_complete(2, {}, 5);
  REQUIRE(tiny.graph.edge_count() == 1);
  CHECK(tiny.weights[0] >= 0.0);
  CHECK(tiny.weights[0] < 1.0);

  CHECK_THROWS_AS(gen_weighted_complete(0, {}, 1), InvalidArgument);

  const WeightedGraph wg = gen_weighted_complete(200, {}, 11);
  REQUIRE(wg.graph.edge_count() == Graph::max_edges(200));
  for (std::size_t i = 1; i < wg.weights.size(); ++i)
    CHECK(wg.weights[i] >= wg.weights[i - 1]);

  // empirical CDF at 0.1 for uniform01 weights: binomial 3 sigma
  const WeightedGraph big = gen_weighted_complete(1000, {}, 13);
  const double m = static_cast<double>(big.weights.size());
  std::int64_t below = 0;
  for (const double w : big.weights) below += w <= 0.1;
  const double sigma = std::sqrt(m * 0.1 * 0.9);
  CHECK(std::abs(static_cast<double>(below) - 0.1 * m) <= 3 * sigma);
}

TEST_CASE("weight distributions: slopes and parsing") {
  CHECK(WeightDistribution::parse("uniform01").density_slope() == 1.0);
  CHECK(WeightDistribution::parse("uniform:4").density_slope() == doctest::Approx(0.25));
  CHECK(WeightDistribution::parse("exp:2.5").density_slope() == doctest::Approx(2.5));
  CHECK_THROWS_AS(WeightDistribution::parse("gauss:1"), InvalidArgument);
  CHECK_THROWS_AS(WeightDistribution::parse("uniform:-1"), InvalidArgument);

  // small-quantile mass matches a*eps for each kind
  for (const char* spec : {"uniform01", "uniform:2", "exp:0.5"}) {
    const WeightDistribution dist = WeightDistribution::parse(spec);
    Rng rng(31);
    const int samples = 200000;
    const double eps = 0.02;
    int below = 0;
    for (int i = 0; i < samples; ++i) below += dist.sample(rng) <= eps;
    const double expected = dist.density_slope() * eps;
    CHECK(std::abs(static_cast<double>(below) / samples - expected) < 5e-3);
  }
}

TEST_CASE("kcore examples") {
  const CoreResult k4 = kcore(test_support::make_complete(4), 3);
  CHECK(k4.vertices == std::vector<int>{0, 1, 2, 3});
  CHECK(k4.induced_edge_count == 6);
  CHECK(k4.density == doctest::Approx(3.0));

  CHECK(kcore(test_support::make_path(5), 2).vertices.empty());

  Graph c5p = test_support::make_cycle(5);
  c5p.n = 6;
  c5p.add_edge(0, 5);
  const CoreResult core = kcore(c5p, 2);
  CHECK(core.vertices == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(core.induced_edge_count == 5);
  CHECK(core.density == doctest::Approx(2.0));

  CHECK(kcore(test_support::make_path(3), 0).vertices == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(kcore(test_support::make_path(3), -1), InvalidArgument);
}

namespace {

// peeling with a random victim order; the survivor set must not depend on it
std::set<int> random_order_core(const Graph& g, int kappa, Rng& rng) {
  auto deg = g.degrees();
  const auto adj = g.adjacency();
  std::vector<char> alive(g.n, 1);
  for (;;) {
    std::vector<int> victims;
    for (int v = 0; v < g.n; ++v)
      if (alive[v] && deg[v] < kappa) victims.push_back(v);
    if (victims.empty()) break;
    const int v = victims[rng.next_below(victims.size())];
    alive[v] = 0;
    for (const auto& nb : adj[v])
      if (alive[nb.first]) --deg[nb.first];
  }
  std::set<int> out;
  for (int v = 0; v < g.n; ++v)
    if (alive[v]) out.insert(v);
  return out;
}

}  // namespace

TEST_CASE("kcore is independent of peeling order and cores are nested") {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_below(46));
    const int m = static_cast<int>(rng.next_below(2 * n + 1));
    const Graph g = test_support::random_simple_graph(rng, n, std::min<int>(m, Graph::max_edges(n)));
    const int kappa = 1 + static_cast<int>(rng.next_below(4));

    const CoreResult reference = kcore(g, kappa);
    const std::set<int> expected(reference.vertices.begin(), reference.vertices.end());
    CHECK(random_order_core(g, kappa, rng) == expected);

    const CoreResult tighter = kcore(g, kappa + 1);
    for (const int v : tighter.vertices) CHECK(expected.count(v) == 1);
  }
}

TEST_CASE("edge list io round trips") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 4);
  g.add_edge(2, 3);
  std::vector<double> weights = {0.5, 1.25, 3.0};

  std::ostringstream out;
  write_edge_list(out, g, &weights);
  std::istringstream in(out.str());
  const WeightedGraph back = read_edge_list(in, "mem");
  CHECK(back.graph.n == 5);
  REQUIRE(back.graph.edges.size() == 3);
  CHECK(back.graph.edges[1] == Edge{1, 4});
  CHECK(back.weights == weights);

  std::istringstream unweighted("# comment\nn 3\n0 1\n1 2 # trailing\n");
  const WeightedGraph uw = read_edge_list(unweighted, "mem");
  CHECK(uw.graph.edges.size() == 2);
  CHECK(uw.weights.empty());
}

TEST_CASE("edge list io rejects malformed input") {
  std::istringstream missing_header("0 1\n");
  CHECK_THROWS_AS(read_edge_list(missing_header, "mem"), IoError);
  std::istringstream self_loop("n 3\n1 1\n");
  CHECK_THROWS_AS(read_edge_list(self_loop, "mem"), IoError);
  std::istringstream mixed("n 3\n0 1 0.5\n1 2\n");
  CHECK_THROWS_AS(read_edge_list(mixed, "mem"), IoError);
  std::istringstream out_of_range("n 2\n0 5\n");
  CHECK_THROWS_AS(read_edge_list(out_of_range, "mem"), IoError);
  CHECK_THROWS_AS(read_edge_list_file("/nonexistent/path.edges"), IoError);
}
