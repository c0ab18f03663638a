#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bridgewalk/error.hpp"

namespace bridgewalk {

// Undirected simple graph: no self-loops, no duplicate edges, connected,
// at least one edge.  Vertices are 0 .. vertex_count-1.
struct SimpleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;      // normalized u < v, sorted
  std::vector<std::vector<int>> adjacency;     // sorted neighbor lists

  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int arc_count() const { return 2 * edge_count(); }
};

// Validates and normalizes an edge list.  Throws Error with code bad_vertex,
// self_loop, duplicate_edge, no_edges or disconnected.
SimpleGraph build_simple_graph(int vertex_count,
                               std::vector<std::pair<int, int>> edges);

SimpleGraph complete_graph(int n);  // n >= 2
SimpleGraph cycle_graph(int n);     // n >= 3
SimpleGraph path_graph(int n);      // n >= 2
SimpleGraph star_graph(int n);      // n >= 2; vertex 0 is the center

// G(n, p) with edges drawn independently, resampled up to 100 times until
// connected with at least one edge.  The draw sequence depends only on seed,
// not on the platform.
SimpleGraph random_connected_graph(int n, double p, std::uint64_t seed);

// One edge per line as two 0-indexed vertex ids separated by whitespace.
// Lines starting with '#' and blank lines are skipped; vertex_count is
// inferred as max id + 1.
SimpleGraph read_edge_list(std::istream& in);
SimpleGraph read_edge_list_file(const std::string& path);

// Directed arc; every undirected edge contributes both orientations.
struct Arc {
  int origin = 0;
  int terminal = 0;
};

enum class Region { h1, h2, bridge };

// Two simple graphs joined by one bridge edge (xi1, xi2).  Vertex ids of the
// second graph are offset by h1.vertex_count.  Arcs are stored as the H1
// block, then the H2 block, then the two bridge arcs (xi1->xi2, xi2->xi1);
// within a block arcs are sorted by (origin, terminal).
struct BridgedGraph {
  SimpleGraph h1, h2;
  int xi1 = 0;  // boundary vertex of the first graph (global id)
  int xi2 = 0;  // boundary vertex of the second graph (global id)
  int vertex_count = 0;
  std::vector<Arc> arcs;
  std::vector<int> inverse;  // index of the reversed arc
  std::vector<int> degree;   // per vertex, within its own subgraph only
  int a1 = 0, a2 = 0;        // arc counts of the H1 / H2 blocks

  int arc_count() const { return static_cast<int>(arcs.size()); }
  bool is_boundary(int v) const { return v == xi1 || v == xi2; }
  Region arc_region(int arc) const;
  Region vertex_region(int v) const { return v < h1.vertex_count ? Region::h1 : Region::h2; }

  // w(a): 1 on subgraph arcs, eps on the bridge pair.
  double weight(int arc, double eps) const;
  // m(x): total weight leaving x, i.e. degree(x) plus eps at the boundary.
  double weighted_degree(int v, double eps) const;
  // p_eps(a) = w(a) / m(origin(a)); one row of the transition matrix.
  double transition_prob(int arc, double eps) const;
};

// xi1 / xi2 are local vertex ids of h1 / h2.  Throws Error
// (bad_boundary_vertex) when either is out of range.
BridgedGraph bridge_graphs(const SimpleGraph& h1, int xi1,
                           const SimpleGraph& h2, int xi2);

}  // namespace bridgewalk
