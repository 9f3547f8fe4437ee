#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "qbounds/errors.hpp"
#include "qbounds/families.hpp"
#include "qbounds/linalg.hpp"
#include "qbounds/spectra.hpp"

using namespace qbounds;

namespace {

SymMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

void check_close(const Spectrum& s, const std::vector<double>& expected, double tol = 1e-10) {
  REQUIRE(s.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s[i] == doctest::Approx(expected[i]).epsilon(tol));
}

// (x - r_1)...(x - r_k) with integer roots.
RationalPoly from_roots(const std::vector<int>& roots) {
  std::vector<Rational> c{1};
  for (int r : roots) {
    std::vector<Rational> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= c[k] * r;
    }
    c = next;
  }
  return RationalPoly(c);
}

}  // namespace

TEST_CASE("eigenvalues of small graph matrices") {
  check_close(sym_eigenvalues(from_rows({{1, 1}, {1, 1}})), {2, 0});
  check_close(sym_eigenvalues(build_matrix(make_complete(3), MatrixKind::SignlessLaplacian)), {4, 1, 1});
  check_close(sym_eigenvalues(build_matrix(make_cycle(4), MatrixKind::SignlessLaplacian)), {4, 2, 2, 0});
}

TEST_CASE("Jacobi agrees with Eigen on random symmetric matrices") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int n : {1, 2, 5, 12, 30}) {
    SymMatrix m(n);
    Eigen::MatrixXd e(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double x = dist(rng);
        m.set(i, j, x);
        e(i, j) = e(j, i) = x;
      }
    }
    const Spectrum s = sym_eigenvalues(m);
    const std::vector<double> ref = oracle::eigenvalues(e);
    REQUIRE(s.size() == ref.size());
    for (int i = 0; i < n; ++i) CHECK(std::abs(s[i] - ref[i]) <= std::max(s.tol, 1e-9));
  }
}

TEST_CASE("top eigenpair is an eigenpair") {
  const SymMatrix q = build_matrix(make_star_plus_edge(7), MatrixKind::SignlessLaplacian);
  const EigenPair p = top_eigenpair(q);
  CHECK(p.value == doctest::Approx(sym_eigenvalues(q)[0]));
  double norm = 0.0;
  for (int i = 0; i < q.order(); ++i) {
    double row = 0.0;
    for (int j = 0; j < q.order(); ++j) row += q(i, j) * p.vector[j];
    CHECK(row == doctest::Approx(p.value * p.vector[i]).epsilon(1e-9));
    norm += p.vector[i] * p.vector[i];
  }
  CHECK(norm == doctest::Approx(1.0));
}

TEST_CASE("solver rejects bad input") {
  SymMatrix m(2);
  m.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(sym_eigenvalues(m), PreconditionError);
  SymMatrix a(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(sym_eigenvalues(a), PreconditionError);
}

TEST_CASE("spectrum partial sums") {
  const Spectrum s = sym_eigenvalues(build_matrix(make_cycle(4), MatrixKind::SignlessLaplacian));
  CHECK(s.sum_top(2) == doctest::Approx(6));
  CHECK(s.sum_bottom(2) == doctest::Approx(2));
  CHECK(s.sum() == doctest::Approx(8));
  CHECK(s.at1(4) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("characteristic polynomial of the identity") {
  const RationalMatrix id(2, {{1, 0}, {0, 1}});
  CHECK(char_poly_exact(id) == from_roots({1, 1}));
  CHECK(eval_poly(char_poly_exact(id), 1) == 0);
}

TEST_CASE("characteristic polynomial matches exact determinants") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int n : {1, 3, 5, 7}) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = Rational(dist(rng), 1 + (i + j) % 3);
    }
    const RationalPoly f = char_poly_exact(m);
    CHECK(f.degree() == n);
    for (int x = -3; x <= 3; ++x) CHECK(eval_poly(f, x) == oracle::char_poly_at(m, x));
    CHECK(eval_poly(f, Rational(1, 3)) == oracle::char_poly_at(m, Rational(1, 3)));
  }
}

TEST_CASE("characteristic polynomial of graph matrices has the graph spectrum as roots") {
  const Graph g = make_complete_bipartite(2, 3);
  const SymMatrix q = build_matrix(g, MatrixKind::SignlessLaplacian);
  RationalMatrix r(g.order());
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < g.order(); ++j) r(i, j) = static_cast<long long>(q(i, j));
  }
  // Q(K_{2,3}) has spectrum {5, 3, 2, 2, 0}.
  CHECK(char_poly_exact(r) == from_roots({5, 3, 2, 2, 0}));
}

TEST_CASE("Sturm counts on polynomials with known roots") {
  const RationalPoly f = from_roots({-2, 1, 1, 3, 3, 3});
  CHECK(count_roots_above(f, 0) == 5);
  CHECK(count_roots_above(f, 1) == 3);
  CHECK(count_roots_above(f, 3) == 0);
  CHECK(count_roots_below(f, 1) == 1);
  CHECK(count_roots_below(f, Rational(5, 2)) == 3);
  CHECK(root_multiplicity(f, 3) == 3);
  CHECK(root_multiplicity(f, 1) == 2);
  CHECK(root_multiplicity(f, 0) == 0);
  CHECK(sign_at(f, 0) == eval_poly(f, 0).sign());
}

TEST_CASE("Sturm counts ignore complex roots") {
  // (x^2 + 1)(x - 2)
  const RationalPoly f({-2, 1, -2, 1});
  CHECK(count_roots_above(f, 0) == 1);
  CHECK(count_roots_below(f, 0) == 0);
  CHECK(count_roots_below(f, 10) == 1);
}

TEST_CASE("dyadic rounding") {
  CHECK(dyadic(0.5) == Rational(1, 2));
  CHECK(dyadic(3.0) == 3);
  CHECK(std::abs(to_double(dyadic(std::sqrt(2.0))) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("polynomial printing and derivative") {
  const RationalPoly f = from_roots({1, 1});
  CHECK(f.derivative().coefficients() == std::vector<Rational>{-2, 2});
  CHECK_FALSE(f.to_string().empty());
}
