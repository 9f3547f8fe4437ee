#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <vector>

#include "qbounds/graph.hpp"
#include "qbounds/linalg.hpp"
#include "qbounds/spectra.hpp"

namespace oracle {

using qbounds::Graph;
using qbounds::MatrixKind;
using qbounds::Rational;

// Matrix assembled straight from the edge list, sign convention per kind.
inline Eigen::MatrixXd dense(const Graph& g, MatrixKind kind) {
  const int n = g.order();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double off = kind == MatrixKind::Laplacian ? -1.0 : 1.0;
  for (const auto& e : g.edges()) {
    m(e.u, e.v) = off;
    m(e.v, e.u) = off;
    if (kind != MatrixKind::Adjacency) {
      m(e.u, e.u) += 1.0;
      m(e.v, e.v) += 1.0;
    }
  }
  return m;
}

inline std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline std::vector<double> spectrum(const Graph& g, MatrixKind kind) { return eigenvalues(dense(g, kind)); }

// det(x I - m) by fraction-free elimination over the rationals.
inline Rational char_poly_at(const qbounds::RationalMatrix& m, const Rational& x) {
  const int n = m.order();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = (i == j ? x : Rational(0)) - m(i, j);
  }
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Labelled connected graphs on n vertices by the standard recurrence
// c_n = 2^C(n,2) - sum_{k<n} C(n-1,k-1) c_k 2^C(n-k,2).
inline std::uint64_t connected_labelled(int n) {
  std::vector<std::uint64_t> c(n + 1, 0);
  auto binom = [](int a, int b) {
    std::uint64_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  auto all = [](int k) { return std::uint64_t{1} << (k * (k - 1) / 2); };
  for (int m = 1; m <= n; ++m) {
    std::uint64_t s = all(m);
    for (int k = 1; k < m; ++k) s -= binom(m - 1, k - 1) * c[k] * all(m - k);
    c[m] = s;
  }
  return c[n];
}

}  // namespace oracle
