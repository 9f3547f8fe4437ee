#include "qbounds/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "qbounds/errors.hpp"

namespace qbounds {

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw PreconditionError("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  nbrs_.resize(n);
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= n) {
      throw PreconditionError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ")");
    }
    auto& cell = adj_[static_cast<std::size_t>(e.u) * n + e.v];
    if (cell) {
      throw PreconditionError("duplicate edge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ")");
    }
    cell = 1;
    adj_[static_cast<std::size_t>(e.v) * n + e.u] = 1;
    nbrs_[e.u].push_back(e.v);
    nbrs_[e.v].push_back(e.u);
  }
  for (auto& list : nbrs_) std::sort(list.begin(), list.end());
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw IndexError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return nbrs_[v];
}

int Graph::degree(Vertex v) const {
  check_vertex(v);
  return static_cast<int>(nbrs_[v].size());
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return adj_[static_cast<std::size_t>(a) * n_ + b] != 0;
}

int DegreeSequence::sum_top(int m) const {
  m = std::clamp(m, 0, static_cast<int>(values.size()));
  return std::accumulate(values.begin(), values.begin() + m, 0);
}

DegreeSequence degree_sequence(const Graph& g) {
  DegreeSequence ds;
  const int n = g.order();
  ds.values.reserve(n);
  for (Vertex v = 0; v < n; ++v) ds.values.push_back(g.degree(v));
  for (Vertex v = 0; v < n; ++v) {
    if (ds.first < 0 || g.degree(v) > g.degree(ds.first)) ds.first = v;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v == ds.first) continue;
    if (ds.second < 0 || g.degree(v) > g.degree(ds.second)) ds.second = v;
  }
  std::sort(ds.values.begin(), ds.values.end(), std::greater<>());
  return ds;
}

namespace {

// Component label per vertex via breadth-first search.
std::vector<int> components(const Graph& g, int* count) {
  std::vector<int> comp(g.order(), -1);
  int c = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    std::queue<Vertex> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : g.neighbors(x)) {
        if (comp[y] < 0) {
          comp[y] = c;
          q.push(y);
        }
      }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

}  // namespace

bool is_connected(const Graph& g) {
  if (g.order() == 0) return false;
  int count = 0;
  components(g, &count);
  return count == 1;
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : g.neighbors(x)) {
        if (side[y] < 0) {
          side[y] = 1 - side[x];
          q.push(y);
        } else if (side[y] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_regular(const Graph& g) {
  for (Vertex v = 1; v < g.order(); ++v) {
    if (g.degree(v) != g.degree(0)) return false;
  }
  return true;
}

Graph remove_vertex(const Graph& g, Vertex v) {
  if (v < 0 || v >= g.order()) throw IndexError("remove_vertex: vertex " + std::to_string(v) + " out of range");
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.u == v || e.v == v) continue;
    kept.emplace_back(e.u > v ? e.u - 1 : e.u, e.v > v ? e.v - 1 : e.v);
  }
  return Graph(g.order() - 1, std::move(kept));
}

Graph remove_edge(const Graph& g, const Edge& e) {
  if (e.u < 0 || e.v >= g.order() || e.u == e.v || !g.has_edge(e)) {
    throw PreconditionError("remove_edge: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") not present");
  }
  std::vector<Edge> kept;
  kept.reserve(g.size() - 1);
  for (const Edge& f : g.edges()) {
    if (f != e) kept.push_back(f);
  }
  return Graph(g.order(), std::move(kept));
}

Graph add_edge(const Graph& g, const Edge& e) {
  std::vector<Edge> edges = g.edges();
  edges.push_back(e);
  return Graph(g.order(), std::move(edges));
}

VertexSet normalize_subset(const Graph& g, VertexSet subset) {
  for (Vertex v : subset) {
    if (v < 0 || v >= g.order()) throw IndexError("subset member " + std::to_string(v) + " out of range");
  }
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  return subset;
}

VertexSet complement(const Graph& g, const VertexSet& subset) {
  std::vector<std::uint8_t> in(g.order(), 0);
  for (Vertex v : normalize_subset(g, subset)) in[v] = 1;
  VertexSet out;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!in[v]) out.push_back(v);
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& subset) {
  InducedSubgraph result;
  result.vertex_map = normalize_subset(g, subset);
  std::vector<int> relabel(g.order(), -1);
  for (std::size_t i = 0; i < result.vertex_map.size(); ++i) relabel[result.vertex_map[i]] = static_cast<int>(i);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (relabel[e.u] >= 0 && relabel[e.v] >= 0) kept.emplace_back(relabel[e.u], relabel[e.v]);
  }
  result.graph = Graph(static_cast<int>(result.vertex_map.size()), std::move(kept));
  return result;
}

BoundaryCounts boundary_counts(const Graph& g, const VertexSet& subset) {
  std::vector<std::uint8_t> in(g.order(), 0);
  for (Vertex v : normalize_subset(g, subset)) in[v] = 1;
  BoundaryCounts bc;
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) {
      ++bc.inside;
    } else if (in[e.u] || in[e.v]) {
      ++bc.cut;
    } else {
      ++bc.outside;
    }
  }
  return bc;
}

bool is_star(const Graph& g) {
  const int n = g.order();
  if (n < 2 || static_cast<int>(g.size()) != n - 1) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == n - 1) return true;
  }
  return false;
}

bool is_triangle(const Graph& g) { return g.order() == 3 && g.size() == 3; }

bool is_path_p4(const Graph& g) {
  if (g.order() != 4 || g.size() != 3 || !is_connected(g)) return false;
  DegreeSequence ds = degree_sequence(g);
  return ds.values == std::vector<int>{2, 2, 1, 1};
}

bool is_complete_multipartite(const Graph& g) {
  // Complete multipartite iff non-adjacency is an equivalence relation.
  const int n = g.order();
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (a == b || g.adjacent(a, b)) continue;
      for (Vertex c = 0; c < n; ++c) {
        if (c == a || c == b || g.adjacent(b, c)) continue;
        if (g.adjacent(a, c)) return false;
      }
    }
  }
  return n > 0;
}

}  // namespace qbounds
