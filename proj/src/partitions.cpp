#include "qbounds/partitions.hpp"

#include <algorithm>
#include <cmath>

#include "qbounds/errors.hpp"

namespace qbounds {

VertexPartition::VertexPartition(int n, std::vector<VertexSet> blocks) : n_(n), blocks_(std::move(blocks)) {
  owner_.assign(n, -1);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty()) throw PreconditionError("partition block " + std::to_string(i) + " is empty");
    for (Vertex v : blocks_[i]) {
      if (v < 0 || v >= n) throw PreconditionError("partition member " + std::to_string(v) + " out of range");
      if (owner_[v] >= 0) throw PreconditionError("vertex " + std::to_string(v) + " appears in two blocks");
      owner_[v] = static_cast<int>(i);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (owner_[v] < 0) throw PreconditionError("vertex " + std::to_string(v) + " is not covered by the partition");
  }
}

VertexPartition VertexPartition::singletons(int n) {
  std::vector<VertexSet> blocks;
  for (Vertex v = 0; v < n; ++v) blocks.push_back({v});
  return VertexPartition(n, std::move(blocks));
}

VertexPartition VertexPartition::split_off(int n, const std::vector<Vertex>& ordered_subset) {
  std::vector<VertexSet> blocks;
  std::vector<std::uint8_t> in(n, 0);
  for (Vertex u : ordered_subset) {
    if (u < 0 || u >= n) throw IndexError("subset member " + std::to_string(u) + " out of range");
    blocks.push_back({u});
    in[u] = 1;
  }
  VertexSet rest;
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v]) rest.push_back(v);
  }
  if (!rest.empty()) blocks.push_back(std::move(rest));
  return VertexPartition(n, std::move(blocks));
}

std::vector<int> VertexPartition::sizes() const {
  std::vector<int> s;
  for (const auto& b : blocks_) s.push_back(static_cast<int>(b.size()));
  return s;
}

SymMatrix symmetrize_quotient(const RationalMatrix& b, const std::vector<int>& block_sizes) {
  const int m = b.order();
  if (static_cast<int>(block_sizes.size()) != m) throw PreconditionError("symmetrize_quotient: size mismatch");
  SymMatrix a(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const Rational sij = b(i, j) * block_sizes[i];
      if (sij != b(j, i) * block_sizes[j]) {
        throw PreconditionError("symmetrize_quotient: matrix is not a quotient of a symmetric matrix");
      }
      a.set(i, j, to_double(sij) / std::sqrt(static_cast<double>(block_sizes[i]) * block_sizes[j]));
    }
  }
  return a;
}

SymMatrix QuotientMatrix::symmetrized() const { return symmetrize_quotient(b, partition.sizes()); }

QuotientMatrix quotient(const Graph& g, MatrixKind kind, const VertexPartition& p) {
  if (p.order() != g.order()) throw PreconditionError("quotient: partition does not cover V(g)");
  const int m = p.block_count();
  const SymMatrix a = build_matrix(g, kind);
  QuotientMatrix q{RationalMatrix(m), kind, p};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      long long sum = 0;
      for (Vertex x : p.block(i)) {
        for (Vertex y : p.block(j)) sum += std::llround(a(x, y));
      }
      q.b(i, j) = Rational(sum, static_cast<long long>(p.block(i).size()));
    }
  }
  return q;
}

std::string_view to_string(PartitionClass c) {
  switch (c) {
    case PartitionClass::Equitable: return "equitable";
    case PartitionClass::AlmostEquitable: return "almost-equitable";
    case PartitionClass::Neither: return "neither";
  }
  return "?";
}

PartitionClass classify_partition(const Graph& g, const VertexPartition& p) {
  if (p.order() != g.order()) throw PreconditionError("classify_partition: partition does not cover V(g)");
  const int m = p.block_count();
  bool diagonal_ok = true;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int expected = -1;
      for (Vertex x : p.block(i)) {
        int count = 0;
        for (Vertex y : g.neighbors(x)) count += p.block_of(y) == j ? 1 : 0;
        if (expected < 0) {
          expected = count;
        } else if (count != expected) {
          if (i != j) return PartitionClass::Neither;
          diagonal_ok = false;
        }
      }
    }
  }
  return diagonal_ok ? PartitionClass::Equitable : PartitionClass::AlmostEquitable;
}

InterlacingReport check_interlacing(const Spectrum& outer, const Spectrum& inner) {
  const int n = static_cast<int>(outer.size());
  const int m = static_cast<int>(inner.size());
  if (m > n) throw PreconditionError("check_interlacing: inner spectrum longer than outer");
  const double tol = 10.0 * std::max(outer.tol, inner.tol);
  InterlacingReport r;
  for (int i = 0; i < m; ++i) {
    const double up = outer[i] - inner[i];
    const double lo = inner[i] - outer[n - m + i];
    r.upper_slack.push_back(up);
    r.lower_slack.push_back(lo);
    if ((up < -tol || lo < -tol) && !r.first_violation) {
      r.holds = false;
      r.first_violation = i + 1;
    }
  }
  if (r.holds) {
    for (int k = 0; k <= m && !r.tight; ++k) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) ok = std::abs(r.upper_slack[i]) <= tol;
      for (int i = k; i < m && ok; ++i) ok = std::abs(r.lower_slack[i]) <= tol;
      if (ok) {
        r.tight = true;
        r.tight_split = k;
      }
    }
  }
  return r;
}

RemovalReport check_vertex_removal_interlacing(const Graph& g, Vertex v) {
  if (g.order() < 2) throw PreconditionError("vertex-removal interlacing needs n >= 2");
  const Spectrum q = spectrum_of(g, MatrixKind::SignlessLaplacian);
  const Spectrum s = spectrum_of(remove_vertex(g, v), MatrixKind::SignlessLaplacian);
  const double tol = 10.0 * std::max(q.tol, s.tol);
  RemovalReport r;
  r.right_equality = true;
  for (int i = 0; i + 1 < g.order(); ++i) {
    const bool left = q[i + 1] - 1.0 <= s[i] + tol;
    const bool right = s[i] <= q[i] + tol;
    if ((!left || !right) && !r.first_violation) {
      r.holds = false;
      r.first_violation = i + 1;
    }
    if (std::abs(q[i] - s[i]) > tol) r.right_equality = false;
  }
  return r;
}

RemovalReport check_edge_removal_interlacing(const Graph& g, const Edge& e, MatrixKind kind) {
  if (kind == MatrixKind::Adjacency) throw PreconditionError("edge-removal interlacing is defined for L and Q");
  const Spectrum q = spectrum_of(g, kind);
  const Spectrum s = spectrum_of(remove_edge(g, e), kind);
  const double tol = 10.0 * std::max(q.tol, s.tol);
  const int n = g.order();
  RemovalReport r;
  auto fail = [&](int i) {
    if (!r.first_violation) r.first_violation = i;
    r.holds = false;
  };
  for (int i = 0; i < n; ++i) {
    if (s[i] > q[i] + tol) fail(i + 1);
    if (i + 1 < n && s[i] < q[i + 1] - tol) fail(i + 1);
  }
  if (kind == MatrixKind::SignlessLaplacian) {
    if (s[n - 1] < -tol) fail(n);
  } else if (std::abs(s[n - 1]) > tol || std::abs(q[n - 1]) > tol) {
    fail(n);
  }
  return r;
}

QuotientMatrix t1_quotient(const Graph& g, const std::vector<Vertex>& ordered_subset) {
  const int m = static_cast<int>(ordered_subset.size());
  if (m <= 0 || m >= g.order()) throw PreconditionError("t1_quotient: need 0 < |U| < n");
  if (normalize_subset(g, ordered_subset).size() != ordered_subset.size()) {
    throw PreconditionError("t1_quotient: repeated vertex in U");
  }
  if (!is_connected(g)) throw PreconditionError("t1_quotient: graph must be connected");
  return quotient(g, MatrixKind::SignlessLaplacian, VertexPartition::split_off(g.order(), ordered_subset));
}

namespace {

bool arcs_share_vertex(const Arc& a, const Arc& b) {
  return a.tail == b.tail || a.tail == b.head || a.head == b.tail || a.head == b.head;
}

int gram_entry(const Arc& a, const Arc& b, bool same) { return same ? 2 : (arcs_share_vertex(a, b) ? 1 : 0); }

}  // namespace

EdgeQuotient edge_partition_quotient(const Graph& g, const VertexSet& subset) {
  const OrientedIncidence inc = oriented_incidence(g, subset);
  const VertexSet& u = inc.subset;
  const int m = static_cast<int>(u.size());
  std::vector<int> block(g.order(), -1);
  for (int i = 0; i < m; ++i) block[u[i]] = i;

  std::vector<std::vector<std::size_t>> arcs_of(m);
  for (std::size_t k = 0; k < inc.arcs.size(); ++k) {
    const Arc& a = inc.arcs[k];
    if (!a.first_part) continue;
    if (block[a.tail] < 0) throw InvariantError("edge_partition_quotient: D1 arc with tail outside U");
    arcs_of[block[a.tail]].push_back(k);
  }

  EdgeQuotient eq;
  eq.b1 = RationalMatrix(m);
  for (int i = 0; i < m; ++i) {
    if (arcs_of[i].empty()) throw InvariantError("edge_partition_quotient: E_u empty for u=" + std::to_string(u[i]));
    eq.out_degree.push_back(static_cast<int>(arcs_of[i].size()));
    for (int j = 0; j < m; ++j) {
      long long sum = 0;
      for (std::size_t a : arcs_of[i]) {
        for (std::size_t b : arcs_of[j]) sum += gram_entry(inc.arcs[a], inc.arcs[b], a == b);
      }
      eq.b1(i, j) = Rational(sum, static_cast<long long>(arcs_of[i].size()));
    }
  }
  eq.trace = eq.b1.trace();
  const BoundaryCounts bc = boundary_counts(g, u);
  long long degree_sum = 0;
  for (Vertex x : u) degree_sum += g.degree(x);
  eq.identity_value = Rational(degree_sum - bc.inside + m);
  return eq;
}

AugmentedEdgeQuotient augmented_edge_quotient(const Graph& g, const VertexSet& subset) {
  const OrientedIncidence inc = oriented_incidence(g, subset);
  const VertexSet& u = inc.subset;
  const int m = static_cast<int>(u.size());
  std::vector<int> block(g.order(), -1);
  for (int i = 0; i < m; ++i) block[u[i]] = i;

  std::vector<std::vector<std::size_t>> arcs_of(m);
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < inc.arcs.size(); ++k) {
    if (inc.arcs[k].first_part) {
      arcs_of[block[inc.arcs[k].tail]].push_back(k);
    } else {
      rest.push_back(k);
    }
  }
  if (rest.empty()) throw PreconditionError("augmented_edge_quotient: E[complement of U] is empty (degenerate case)");

  // D2^T D2 and its top eigenpair; q'_1 is also the top Q-eigenvalue of G[Ū].
  const int r = static_cast<int>(rest.size());
  SymMatrix m22(r);
  for (int a = 0; a < r; ++a) {
    for (int b = a; b < r; ++b) m22.set(a, b, gram_entry(inc.arcs[rest[a]], inc.arcs[rest[b]], a == b));
  }
  const EigenPair top = top_eigenpair(m22);

  // Columns of S: normalized indicators of E_u, then [0 v].
  const std::size_t k = inc.arcs.size();
  std::vector<std::vector<double>> s(m + 1, std::vector<double>(k, 0.0));
  for (int i = 0; i < m; ++i) {
    const double w = 1.0 / std::sqrt(static_cast<double>(arcs_of[i].size()));
    for (std::size_t a : arcs_of[i]) s[i][a] = w;
  }
  for (int a = 0; a < r; ++a) s[m][rest[a]] = top.vector[a];

  const SymMatrix gram = edge_gram(inc);
  AugmentedEdgeQuotient out;
  out.b = SymMatrix(m + 1);
  for (int i = 0; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        if (s[i][a] == 0.0) continue;
        for (std::size_t b = 0; b < k; ++b) acc += s[i][a] * gram(static_cast<int>(a), static_cast<int>(b)) * s[j][b];
      }
      out.b.set(i, j, acc);
    }
  }
  out.trace = out.b.trace();
  out.q1_prime = top.value;
  const BoundaryCounts bc = boundary_counts(g, u);
  double degree_sum = 0.0;
  for (Vertex x : u) degree_sum += g.degree(x);
  out.identity_value = degree_sum + m - bc.inside + out.q1_prime;
  return out;
}

}  // namespace qbounds
