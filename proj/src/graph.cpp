#include "ktrees/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace ktrees {

Graph::Graph(int vertex_count) : n(vertex_count) {
  if (vertex_count < 0) throw InvalidArgument("Graph: negative vertex count");
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw InvalidArgument("add_edge: endpoint out of range");
  if (u == v) throw InvalidArgument("add_edge: self-loop");
  edges.push_back({u, v});
}

std::vector<std::vector<std::pair<int, int>>> Graph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].emplace_back(edges[i].v, static_cast<int>(i));
    adj[edges[i].v].emplace_back(edges[i].u, static_cast<int>(i));
  }
  return adj;
}

std::vector<std::int64_t> Graph::degrees() const {
  std::vector<std::int64_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

double WeightDistribution::density_slope() const {
  switch (kind) {
    case Kind::Uniform01: return 1.0;
    case Kind::Uniform: return 1.0 / param;
    case Kind::Exponential: return param;
  }
  throw InvalidArgument("WeightDistribution: bad kind");
}

double WeightDistribution::sample(Rng& rng) const {
  switch (kind) {
    case Kind::Uniform01: return rng.next_double();
    case Kind::Uniform: return param * rng.next_double();
    case Kind::Exponential: return rng.next_exponential(param);
  }
  throw InvalidArgument("WeightDistribution: bad kind");
}

std::string WeightDistribution::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Uniform01: out << "uniform01"; break;
    case Kind::Uniform: out << "uniform:" << param; break;
    case Kind::Exponential: out << "exp:" << param; break;
  }
  return out.str();
}

WeightDistribution WeightDistribution::parse(const std::string& text) {
  WeightDistribution dist;
  if (text == "uniform01") {
    dist.kind = Kind::Uniform01;
    dist.param = 1.0;
    return dist;
  }
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    double value = 0;
    try {
      value = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("bad distribution parameter in '" + text + "'");
    }
    if (!(value > 0)) throw InvalidArgument("distribution parameter must be > 0");
    if (head == "uniform") {
      dist.kind = Kind::Uniform;
      dist.param = value;
      return dist;
    }
    if (head == "exp") {
      dist.kind = Kind::Exponential;
      dist.param = value;
      return dist;
    }
  }
  throw InvalidArgument("unknown distribution '" + text +
                        "' (expected uniform01, uniform:<b> or exp:<rate>)");
}

Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed) {
  if (n < 0) throw InvalidArgument("gen_gnm: negative n");
  const std::int64_t total = Graph::max_edges(n);
  if (m < 0 || m > total) throw InvalidArgument("gen_gnm: m out of range");
  Graph g(n);
  g.edges.reserve(static_cast<std::size_t>(m));
  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);
  while (g.edge_count() < m) {
    int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const std::uint64_t key =
        static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
    if (seen.insert(key).second) g.edges.push_back({u, v});
  }
  return g;
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw InvalidArgument("gen_gnp: negative n");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("gen_gnp: p out of [0,1]");
  Graph g(n);
  if (n < 2 || p == 0.0) return g;
  if (p == 1.0) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.edges.push_back({u, v});
    return g;
  }
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  const std::int64_t total = Graph::max_edges(n);
  std::int64_t pos = -1;
  // (row, row_base): row_base is the linear index of pair (row, row+1)
  int row = 0;
  std::int64_t row_base = 0;
  for (;;) {
    const double u01 = rng.next_double();
    const double jump = std::floor(std::log1p(-u01) / log_q);
    pos += 1 + static_cast<std::int64_t>(jump);
    if (pos >= total || pos < 0) break;  // pos < 0 guards int64 overflow on huge jumps
    while (pos >= row_base + (n - 1 - row)) {
      row_base += n - 1 - row;
      ++row;
    }
    const int col = row + 1 + static_cast<int>(pos - row_base);
    g.edges.push_back({row, col});
  }
  return g;
}

WeightedGraph gen_weighted_complete(int n, const WeightDistribution& dist, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("gen_weighted_complete: n must be >= 1");
  const std::int64_t total = Graph::max_edges(n);
  WeightedGraph wg;
  wg.graph.n = n;
  wg.graph.edges.reserve(static_cast<std::size_t>(total));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) wg.graph.edges.push_back({u, v});

  Rng rng(seed);
  wg.weights.resize(static_cast<std::size_t>(total));
  for (auto& w : wg.weights) w = dist.sample(rng);

  std::vector<std::int64_t> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    if (wg.weights[a] != wg.weights[b]) return wg.weights[a] < wg.weights[b];
    return a < b;
  });

  std::vector<Edge> edges(wg.graph.edges.size());
  std::vector<double> weights(wg.weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    edges[i] = wg.graph.edges[order[i]];
    weights[i] = wg.weights[order[i]];
  }
  wg.graph.edges = std::move(edges);
  wg.weights = std::move(weights);
  return wg;
}

CoreResult kcore(const Graph& g, int kappa) {
  if (kappa < 0) throw InvalidArgument("kcore: kappa must be >= 0");
  CoreResult result;
  result.kappa = kappa;
  const int n = g.n;

  // CSR adjacency
  std::vector<int> offset(n + 1, 0);
  for (const Edge& e : g.edges) {
    ++offset[e.u + 1];
    ++offset[e.v + 1];
  }
  for (int v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<int> nbr(g.edges.size() * 2);
  {
    std::vector<int> cursor(offset.begin(), offset.end() - 1);
    for (const Edge& e : g.edges) {
      nbr[cursor[e.u]++] = e.v;
      nbr[cursor[e.v]++] = e.u;
    }
  }

  std::vector<std::int64_t> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = offset[v + 1] - offset[v];
  std::vector<char> alive(n, 1);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (deg[v] < kappa) stack.push_back(v);
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int i = offset[v]; i < offset[v + 1]; ++i) {
      const int w = nbr[i];
      if (!alive[w]) continue;
      if (--deg[w] == kappa - 1) stack.push_back(w);
    }
  }

  for (int v = 0; v < n; ++v)
    if (alive[v]) result.vertices.push_back(v);
  for (const Edge& e : g.edges)
    if (alive[e.u] && alive[e.v]) ++result.induced_edge_count;
  result.density = result.vertices.empty()
                       ? 0.0
                       : 2.0 * static_cast<double>(result.induced_edge_count) /
                             static_cast<double>(result.vertices.size());
  return result;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in, const std::string& context) {
  WeightedGraph wg;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int weighted = -1;  // -1 unknown, 0 no, 1 yes
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string first;
    if (!(fields >> first)) continue;
    const std::string where = context + ":" + std::to_string(line_no);
    if (!have_header) {
      int n = 0;
      if (first != "n" || !(fields >> n) || n < 0)
        throw IoError(where + ": expected header 'n <N>'");
      wg.graph = Graph(n);
      have_header = true;
      continue;
    }
    int u = 0, v = 0;
    double w = 0;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw IoError(where + ": bad vertex id '" + first + "'");
    }
    if (!(fields >> v)) throw IoError(where + ": expected 'u v' or 'u v w'");
    const bool has_weight = static_cast<bool>(fields >> w);
    if (weighted == -1) weighted = has_weight ? 1 : 0;
    if (weighted != (has_weight ? 1 : 0))
      throw IoError(where + ": mixed weighted and unweighted edge lines");
    try {
      wg.graph.add_edge(u, v);
    } catch (const InvalidArgument& err) {
      throw IoError(where + ": " + err.what());
    }
    if (has_weight) {
      if (w < 0) throw IoError(where + ": negative weight");
      wg.weights.push_back(w);
    }
  }
  if (!have_header) throw IoError(context + ": missing 'n <N>' header");
  return wg;
}

WeightedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<double>* weights) {
  if (weights && !weights->empty() && weights->size() != g.edges.size())
    throw InvalidArgument("write_edge_list: weight count mismatch");
  out << "n " << g.n << "\n";
  char buf[64];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    out << g.edges[i].u << " " << g.edges[i].v;
    if (weights && !weights->empty()) {
      std::snprintf(buf, sizeof buf, "%.17g", (*weights)[i]);
      out << " " << buf;
    }
    out << "\n";
  }
}

void write_edge_list_file(const std::string& path, const Graph& g,
                          const std::vector<double>* weights) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_edge_list(out, g, weights);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace ktrees
