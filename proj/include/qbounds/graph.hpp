#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbounds {

using Vertex = int;
using VertexSet = std::vector<Vertex>;

// Unordered vertex pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on vertices 0..n-1. Immutable once built; every
// surgery operation returns a new value.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws PreconditionError on self-loops, duplicates or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges);

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }

  // Sorted lexicographically by (u, v).
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const;
  bool adjacent(Vertex a, Vertex b) const;
  bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
};

struct DegreeSequence {
  std::vector<int> values;  // descending
  Vertex first = -1;        // witness of values[0], smallest label on ties
  Vertex second = -1;       // witness of values[1] among V \ {first}, smallest label on ties

  int d1() const { return values.at(0); }
  int d2() const { return values.at(1); }
  int sum_top(int m) const;
};

DegreeSequence degree_sequence(const Graph& g);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);
bool is_regular(const Graph& g);

Graph remove_vertex(const Graph& g, Vertex v);
Graph remove_edge(const Graph& g, const Edge& e);
Graph add_edge(const Graph& g, const Edge& e);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> vertex_map;  // new label -> original label
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& subset);

struct BoundaryCounts {
  int cut = 0;      // |∂(U, Ū)|
  int inside = 0;   // |E[U]|
  int outside = 0;  // |E[Ū]|
};

BoundaryCounts boundary_counts(const Graph& g, const VertexSet& subset);

// Sorted, deduplicated, range-checked copy of `subset`.
VertexSet normalize_subset(const Graph& g, VertexSet subset);
VertexSet complement(const Graph& g, const VertexSet& subset);

// Structural predicates used for equality classes.
bool is_star(const Graph& g);
bool is_triangle(const Graph& g);
bool is_path_p4(const Graph& g);
bool is_complete_multipartite(const Graph& g);

// graph6, short form only (n <= 62). Leading ">>graph6<<" and trailing
// whitespace are stripped by the parser.
Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

}  // namespace qbounds
