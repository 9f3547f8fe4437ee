#pragma once

#include <optional>
#include <vector>

#include "qbounds/graph.hpp"
#include "qbounds/linalg.hpp"
#include "qbounds/spectra.hpp"

namespace qbounds {

// Ordered partition of {0..n-1} into nonempty blocks.
class VertexPartition {
 public:
  VertexPartition() = default;
  // Throws PreconditionError unless the blocks are disjoint, nonempty and cover V.
  VertexPartition(int n, std::vector<VertexSet> blocks);

  static VertexPartition singletons(int n);
  // {u_1}, ..., {u_m}, V \ U with U kept in the given order.
  static VertexPartition split_off(int n, const std::vector<Vertex>& ordered_subset);

  int order() const noexcept { return n_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  const VertexSet& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
  std::vector<int> sizes() const;
  int block_of(Vertex v) const { return owner_.at(static_cast<std::size_t>(v)); }

 private:
  int n_ = 0;
  std::vector<VertexSet> blocks_;
  std::vector<int> owner_;
};

struct QuotientMatrix {
  RationalMatrix b;
  MatrixKind source = MatrixKind::SignlessLaplacian;
  VertexPartition partition;

  // K^{1/2} B K^{-1/2}; symmetric and similar to B.
  SymMatrix symmetrized() const;
  Spectrum spectrum() const { return sym_eigenvalues(symmetrized()); }
};

// Similar symmetric form of a quotient of a symmetric matrix with the given
// block sizes. Throws PreconditionError if n_i b_ij != n_j b_ji somewhere.
SymMatrix symmetrize_quotient(const RationalMatrix& b, const std::vector<int>& block_sizes);

QuotientMatrix quotient(const Graph& g, MatrixKind kind, const VertexPartition& p);

enum class PartitionClass { Equitable, AlmostEquitable, Neither };

std::string_view to_string(PartitionClass c);

// Exact neighbor counting on the adjacency structure.
PartitionClass classify_partition(const Graph& g, const VertexPartition& p);

struct InterlacingReport {
  bool holds = true;
  bool tight = false;
  std::optional<int> first_violation;  // 1-based index i
  std::optional<int> tight_split;      // smallest k realising tightness
  std::vector<double> upper_slack;     // outer_i - inner_i
  std::vector<double> lower_slack;     // inner_i - outer_{n-m+i}
};

// Checks outer_i >= inner_i >= outer_{n-m+i}, i = 1..m, with 10x the larger
// solver tolerance per comparison.
InterlacingReport check_interlacing(const Spectrum& outer, const Spectrum& inner);

struct RemovalReport {
  bool holds = true;
  std::optional<int> first_violation;  // 1-based index
  bool right_equality = false;         // q_i(G-v) = q_i(G) for every i (vertex removal only)
};

// q_{i+1}(G) - 1 <= q_i(G - v) <= q_i(G), i = 1..n-1.
RemovalReport check_vertex_removal_interlacing(const Graph& g, Vertex v);

// Q: 0 <= s_n <= q_n <= ... <= s_1 <= q_1.
// L: lambda_1(G) >= lambda_1(H) >= ... >= lambda_{n-1}(G) >= lambda_n(H) = lambda_n(G) = 0.
RemovalReport check_edge_removal_interlacing(const Graph& g, const Edge& e, MatrixKind kind);

// Quotient of Q over {u_1}, ..., {u_m}, Ū (the B' matrix).
QuotientMatrix t1_quotient(const Graph& g, const std::vector<Vertex>& ordered_subset);

struct EdgeQuotient {
  RationalMatrix b1;        // m x m, blocks E_u in sorted U order
  Rational trace;           // tr B1
  Rational identity_value;  // sum_{u in U} d_u - |E[U]| + m
  std::vector<int> out_degree;  // d+_u per block
};

EdgeQuotient edge_partition_quotient(const Graph& g, const VertexSet& subset);

struct AugmentedEdgeQuotient {
  SymMatrix b;            // (m+1) x (m+1)
  double trace = 0.0;
  double q1_prime = 0.0;  // largest Q-eigenvalue of G[Ū]
  double identity_value = 0.0;  // sum d_u + m - |E[U]| + q'_1
};

// Throws PreconditionError when E[Ū] is empty.
AugmentedEdgeQuotient augmented_edge_quotient(const Graph& g, const VertexSet& subset);

}  // namespace qbounds
