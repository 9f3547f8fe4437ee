#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qbounds/graph.hpp"
#include "qbounds/linalg.hpp"

namespace qbounds {

enum class MatrixKind { Adjacency, Laplacian, SignlessLaplacian };

std::string_view to_string(MatrixKind kind);
// Accepts "A", "L", "Q" and the long names; throws PreconditionError otherwise.
MatrixKind parse_matrix_kind(std::string_view text);

SymMatrix build_matrix(const Graph& g, MatrixKind kind);
Spectrum spectrum_of(const Graph& g, MatrixKind kind);

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;
  bool first_part = true;  // true for E[U] and cut arcs (D1), false for E[Ū] arcs (D2)
};

// Orientation of G adapted to a vertex subset U: cut edges point U -> Ū and
// every vertex of U keeps at least one outgoing arc. Columns are ordered with
// all D1 arcs first, then D2 arcs.
struct OrientedIncidence {
  int n = 0;
  VertexSet subset;
  std::vector<Arc> arcs;
  std::vector<int> out_degree;  // per vertex, over all arcs

  std::size_t first_part_count() const;
  // n x |arcs|, +1 at the head, -1 at the tail.
  std::vector<std::vector<int>> signed_matrix() const;
  // n x |arcs|, the entrywise absolute value of signed_matrix().
  std::vector<std::vector<int>> unsigned_matrix() const;
};

OrientedIncidence oriented_incidence(const Graph& g, const VertexSet& subset);

// |arcs| x |arcs| Gram matrix of the unsigned incidence columns: 2 on the
// diagonal, 1 for arcs sharing a vertex.
SymMatrix edge_gram(const OrientedIncidence& inc);

// Per-worker memo of spectra keyed by (graph6, kind). Drops everything once
// it holds more than `capacity` entries.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::size_t capacity = 4096) : capacity_(capacity) {}

  Spectrum get(const Graph& g, MatrixKind kind);
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t hits() const noexcept { return hits_; }

 private:
  std::size_t capacity_;
  std::size_t hits_ = 0;
  std::map<std::pair<std::string, MatrixKind>, Spectrum> entries_;
};

}  // namespace qbounds
