#include "qbounds/spectra.hpp"

#include <queue>

#include "qbounds/errors.hpp"

namespace qbounds {

std::string_view to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Adjacency: return "A";
    case MatrixKind::Laplacian: return "L";
    case MatrixKind::SignlessLaplacian: return "Q";
  }
  return "?";
}

MatrixKind parse_matrix_kind(std::string_view text) {
  if (text == "A" || text == "adjacency") return MatrixKind::Adjacency;
  if (text == "L" || text == "laplacian") return MatrixKind::Laplacian;
  if (text == "Q" || text == "signless" || text == "signless-laplacian") return MatrixKind::SignlessLaplacian;
  throw PreconditionError("unknown matrix kind '" + std::string(text) + "' (expected A, L or Q)");
}

SymMatrix build_matrix(const Graph& g, MatrixKind kind) {
  if (g.order() < 1) throw PreconditionError("build_matrix: graph has no vertices");
  SymMatrix m(g.order());
  const double off = kind == MatrixKind::Laplacian ? -1.0 : 1.0;
  for (const Edge& e : g.edges()) m.set(e.u, e.v, off);
  if (kind != MatrixKind::Adjacency) {
    for (Vertex v = 0; v < g.order(); ++v) m(v, v) = g.degree(v);
  }
  return m;
}

Spectrum spectrum_of(const Graph& g, MatrixKind kind) { return sym_eigenvalues(build_matrix(g, kind)); }

std::size_t OrientedIncidence::first_part_count() const {
  std::size_t k = 0;
  for (const Arc& a : arcs) k += a.first_part ? 1 : 0;
  return k;
}

std::vector<std::vector<int>> OrientedIncidence::signed_matrix() const {
  std::vector<std::vector<int>> m(n, std::vector<int>(arcs.size(), 0));
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    m[arcs[j].tail][j] = -1;
    m[arcs[j].head][j] = 1;
  }
  return m;
}

std::vector<std::vector<int>> OrientedIncidence::unsigned_matrix() const {
  auto m = signed_matrix();
  for (auto& row : m) {
    for (int& x : row) x = x < 0 ? -x : x;
  }
  return m;
}

OrientedIncidence oriented_incidence(const Graph& g, const VertexSet& subset) {
  OrientedIncidence inc;
  inc.n = g.order();
  inc.subset = normalize_subset(g, subset);
  if (inc.subset.empty() || static_cast<int>(inc.subset.size()) >= g.order()) {
    throw PreconditionError("oriented_incidence: U must be a proper nonempty subset");
  }
  if (!is_connected(g)) throw PreconditionError("oriented_incidence: graph must be connected");

  std::vector<std::uint8_t> in(g.order(), 0);
  for (Vertex u : inc.subset) in[u] = 1;

  // Multi-source BFS inside G[U] from the U-vertices that touch Ū.
  std::vector<Vertex> parent(g.order(), -1);
  std::vector<std::uint8_t> seen(g.order(), 0);
  std::queue<Vertex> frontier;
  for (Vertex u : inc.subset) {
    for (Vertex w : g.neighbors(u)) {
      if (!in[w]) {
        seen[u] = 1;
        frontier.push(u);
        break;
      }
    }
  }
  while (!frontier.empty()) {
    const Vertex x = frontier.front();
    frontier.pop();
    for (Vertex y : g.neighbors(x)) {
      if (in[y] && !seen[y]) {
        seen[y] = 1;
        parent[y] = x;
        frontier.push(y);
      }
    }
  }
  for (Vertex u : inc.subset) {
    if (!seen[u]) throw InvariantError("oriented_incidence: vertex " + std::to_string(u) + " cannot reach the cut");
  }

  std::vector<Arc> second;
  for (const Edge& e : g.edges()) {
    if (in[e.u] && in[e.v]) {
      if (parent[e.u] == e.v) {
        inc.arcs.push_back({e.u, e.v, true});
      } else if (parent[e.v] == e.u) {
        inc.arcs.push_back({e.v, e.u, true});
      } else {
        inc.arcs.push_back({e.u, e.v, true});
      }
    } else if (in[e.u]) {
      inc.arcs.push_back({e.u, e.v, true});
    } else if (in[e.v]) {
      inc.arcs.push_back({e.v, e.u, true});
    } else {
      second.push_back({e.u, e.v, false});
    }
  }
  inc.arcs.insert(inc.arcs.end(), second.begin(), second.end());

  inc.out_degree.assign(g.order(), 0);
  for (const Arc& a : inc.arcs) ++inc.out_degree[a.tail];
  for (Vertex u : inc.subset) {
    if (inc.out_degree[u] == 0) throw InvariantError("oriented_incidence: vertex " + std::to_string(u) + " has no outgoing arc");
  }
  return inc;
}

SymMatrix edge_gram(const OrientedIncidence& inc) {
  const int k = static_cast<int>(inc.arcs.size());
  SymMatrix m(k);
  for (int i = 0; i < k; ++i) {
    m(i, i) = 2.0;
    for (int j = i + 1; j < k; ++j) {
      const Arc& a = inc.arcs[i];
      const Arc& b = inc.arcs[j];
      const bool share = a.tail == b.tail || a.tail == b.head || a.head == b.tail || a.head == b.head;
      if (share) m.set(i, j, 1.0);
    }
  }
  return m;
}

Spectrum SpectrumCache::get(const Graph& g, MatrixKind kind) {
  auto key = std::make_pair(to_graph6(g), kind);
  if (auto it = entries_.find(key); it != entries_.end()) {
    ++hits_;
    return it->second;
  }
  if (entries_.size() >= capacity_) entries_.clear();
  return entries_.emplace(std::move(key), spectrum_of(g, kind)).first->second;
}

}  // namespace qbounds
