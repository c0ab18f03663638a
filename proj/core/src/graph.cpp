#include "bridgewalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace bridgewalk {

namespace {

bool is_connected(int vertex_count, const std::vector<std::vector<int>>& adjacency) {
  if (vertex_count <= 0) return false;
  std::vector<char> seen(vertex_count, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adjacency[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == vertex_count;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SimpleGraph build_simple_graph(int vertex_count,
                               std::vector<std::pair<int, int>> edges) {
  if (vertex_count < 1) {
    throw Error(errc::bad_vertex, "vertex count must be positive, got " +
                                      std::to_string(vertex_count));
  }
  if (edges.empty()) {
    throw Error(errc::no_edges, "graph needs at least one edge");
  }
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count) {
      throw Error(errc::bad_vertex, "edge endpoint out of range: " +
                                        std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) {
      throw Error(errc::self_loop, "self-loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      throw Error(errc::duplicate_edge, "duplicate edge " +
                                            std::to_string(edges[i].first) + " " +
                                            std::to_string(edges[i].second));
    }
  }

  SimpleGraph g;
  g.vertex_count = vertex_count;
  g.edges = std::move(edges);
  g.adjacency.assign(vertex_count, {});
  for (auto [u, v] : g.edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& neighbors : g.adjacency) std::sort(neighbors.begin(), neighbors.end());

  if (!is_connected(vertex_count, g.adjacency)) {
    throw Error(errc::disconnected, "graph is not connected");
  }
  return g;
}

SimpleGraph complete_graph(int n) {
  if (n < 2) throw Error(errc::too_small, "complete graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return build_simple_graph(n, std::move(edges));
}

SimpleGraph cycle_graph(int n) {
  if (n < 3) throw Error(errc::too_small, "cycle graph needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return build_simple_graph(n, std::move(edges));
}

SimpleGraph path_graph(int n) {
  if (n < 2) throw Error(errc::too_small, "path graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return build_simple_graph(n, std::move(edges));
}

SimpleGraph star_graph(int n) {
  if (n < 2) throw Error(errc::too_small, "star graph needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return build_simple_graph(n, std::move(edges));
}

SimpleGraph random_connected_graph(int n, double p, std::uint64_t seed) {
  if (n < 2) throw Error(errc::too_small, "random graph needs n >= 2");
  if (!(p > 0.0) || p > 1.0) {
    throw Error(errc::parse_error, "edge probability must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (uniform01(rng) < p) edges.emplace_back(u, v);
    if (edges.empty()) continue;
    try {
      return build_simple_graph(n, std::move(edges));
    } catch (const Error& e) {
      if (e.code() != errc::disconnected) throw;
    }
  }
  throw Error(errc::random_graph_retries_exhausted,
              "no connected draw in " + std::to_string(kMaxAttempts) +
                  " attempts (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

SimpleGraph read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    int u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw Error(errc::parse_error, "line " + std::to_string(line_number) +
                                         ": expected two vertex ids, got \"" + line + "\"");
    }
    if (u < 0 || v < 0) {
      throw Error(errc::bad_vertex, "line " + std::to_string(line_number) +
                                        ": negative vertex id");
    }
    max_vertex = std::max({max_vertex, u, v});
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw Error(errc::no_edges, "edge list is empty");
  return build_simple_graph(max_vertex + 1, std::move(edges));
}

SimpleGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  try {
    return read_edge_list(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

Region BridgedGraph::arc_region(int arc) const {
  if (arc < 0 || arc >= arc_count()) {
    throw std::invalid_argument("arc index out of range");
  }
  if (arc < a1) return Region::h1;
  if (arc < a1 + a2) return Region::h2;
  return Region::bridge;
}

double BridgedGraph::weight(int arc, double eps) const {
  return arc_region(arc) == Region::bridge ? eps : 1.0;
}

double BridgedGraph::weighted_degree(int v, double eps) const {
  if (v < 0 || v >= vertex_count) {
    throw std::invalid_argument("vertex index out of range");
  }
  return degree[v] + (is_boundary(v) ? eps : 0.0);
}

double BridgedGraph::transition_prob(int arc, double eps) const {
  return weight(arc, eps) / weighted_degree(arcs[arc].origin, eps);
}

BridgedGraph bridge_graphs(const SimpleGraph& h1, int xi1,
                           const SimpleGraph& h2, int xi2) {
  if (xi1 < 0 || xi1 >= h1.vertex_count) {
    throw Error(errc::bad_boundary_vertex,
                "xi1=" + std::to_string(xi1) + " outside first graph");
  }
  if (xi2 < 0 || xi2 >= h2.vertex_count) {
    throw Error(errc::bad_boundary_vertex,
                "xi2=" + std::to_string(xi2) + " outside second graph");
  }

  BridgedGraph g;
  g.h1 = h1;
  g.h2 = h2;
  g.xi1 = xi1;
  g.xi2 = h1.vertex_count + xi2;
  g.vertex_count = h1.vertex_count + h2.vertex_count;
  g.a1 = h1.arc_count();
  g.a2 = h2.arc_count();

  g.arcs.reserve(g.a1 + g.a2 + 2);
  auto push_block = [&g](const SimpleGraph& h, int offset) {
    std::vector<Arc> block;
    block.reserve(h.arc_count());
    for (auto [u, v] : h.edges) {
      block.push_back({u + offset, v + offset});
      block.push_back({v + offset, u + offset});
    }
    std::sort(block.begin(), block.end(), [](const Arc& a, const Arc& b) {
      return a.origin != b.origin ? a.origin < b.origin : a.terminal < b.terminal;
    });
    g.arcs.insert(g.arcs.end(), block.begin(), block.end());
  };
  push_block(h1, 0);
  push_block(h2, h1.vertex_count);
  g.arcs.push_back({g.xi1, g.xi2});
  g.arcs.push_back({g.xi2, g.xi1});

  g.degree.resize(g.vertex_count);
  for (int v = 0; v < h1.vertex_count; ++v) g.degree[v] = h1.degree(v);
  for (int v = 0; v < h2.vertex_count; ++v) g.degree[h1.vertex_count + v] = h2.degree(v);

  // Reversal pairs arcs with swapped endpoints; build via an endpoint index.
  g.inverse.assign(g.arc_count(), -1);
  std::vector<std::pair<long, int>> keyed(g.arc_count());
  for (int a = 0; a < g.arc_count(); ++a) {
    keyed[a] = {static_cast<long>(g.arcs[a].origin) * g.vertex_count + g.arcs[a].terminal, a};
  }
  std::sort(keyed.begin(), keyed.end());
  for (int a = 0; a < g.arc_count(); ++a) {
    long reversed_key =
        static_cast<long>(g.arcs[a].terminal) * g.vertex_count + g.arcs[a].origin;
    auto it = std::lower_bound(keyed.begin(), keyed.end(),
                               std::make_pair(reversed_key, -1));
    g.inverse[a] = it->second;
  }
  return g;
}

}  // namespace bridgewalk
