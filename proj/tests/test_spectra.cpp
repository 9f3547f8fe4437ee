#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbounds/errors.hpp"
#include "qbounds/families.hpp"
#include "qbounds/partitions.hpp"
#include "qbounds/search.hpp"
#include "qbounds/spectra.hpp"

using namespace qbounds;

namespace {

void check_matches_oracle(const Graph& g, MatrixKind kind) {
  const Spectrum s = spectrum_of(g, kind);
  const std::vector<double> ref = oracle::spectrum(g, kind);
  REQUIRE(s.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s[i] - ref[i]) <= std::max(s.tol, 1e-9));
}

}  // namespace

TEST_CASE("matrix construction") {
  const SymMatrix k2 = build_matrix(make_complete(2), MatrixKind::SignlessLaplacian);
  CHECK(k2(0, 0) == 1);
  CHECK(k2(0, 1) == 1);
  CHECK(k2(1, 1) == 1);
  const SymMatrix l = build_matrix(make_complete(3), MatrixKind::Laplacian);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(l(i, j) == (i == j ? 2 : -1));
  }
  const SymMatrix s = build_matrix(make_star(4), MatrixKind::SignlessLaplacian);
  CHECK(s(0, 0) == 3);
  CHECK(s(1, 1) == 1);
  CHECK(s(0, 3) == 1);
  CHECK(s(1, 2) == 0);
}

TEST_CASE("matrix kinds parse") {
  CHECK(parse_matrix_kind("Q") == MatrixKind::SignlessLaplacian);
  CHECK(parse_matrix_kind("L") == MatrixKind::Laplacian);
  CHECK(parse_matrix_kind("A") == MatrixKind::Adjacency);
  CHECK_THROWS_AS(parse_matrix_kind("X"), PreconditionError);
}

TEST_CASE("star and family spectra") {
  const Spectrum star = spectrum_of(make_star(4), MatrixKind::SignlessLaplacian);
  CHECK(star[0] == doctest::Approx(4));
  CHECK(star[1] == doctest::Approx(1));
  CHECK(star[2] == doctest::Approx(1));
  CHECK(std::abs(star[3]) < 1e-12);
  const Spectrum k23 = spectrum_of(make_complete_bipartite(2, 3), MatrixKind::SignlessLaplacian);
  CHECK(k23.sum_top(2) == doctest::Approx(8));
  const Spectrum split = spectrum_of(make_complete_split(2), MatrixKind::SignlessLaplacian);
  CHECK(split[0] == doctest::Approx(3 + std::sqrt(5.0)));
  CHECK(split[1] == doctest::Approx(2));
}

TEST_CASE("spectra agree with an independent eigensolver on every graph with five vertices") {
  CorpusSpec spec = CorpusSpec::parse("enumerate:5..5");
  spec.connected_only = false;
  for (const Graph& g : enumerate_graphs(spec)) {
    check_matches_oracle(g, MatrixKind::SignlessLaplacian);
    check_matches_oracle(g, MatrixKind::Laplacian);
    check_matches_oracle(g, MatrixKind::Adjacency);
  }
}

TEST_CASE("oriented incidence respects the cut") {
  const OrientedIncidence p3 = oriented_incidence(make_path(3), {0});
  REQUIRE(p3.arcs.size() == 2);
  CHECK(p3.out_degree[0] == 1);
  CHECK(p3.first_part_count() == 1);
  CHECK(p3.arcs[0].tail == 0);
  CHECK(p3.arcs[0].head == 1);

  const OrientedIncidence k3 = oriented_incidence(make_complete(3), {0});
  CHECK(k3.out_degree[0] == 2);

  const OrientedIncidence s4 = oriented_incidence(make_star(4), {0});
  CHECK(s4.out_degree[0] == 3);
  for (const Arc& a : s4.arcs) CHECK(a.tail == 0);
  CHECK(edge_partition_quotient(make_star(4), {0}).trace == 4);

  CHECK_THROWS_AS(oriented_incidence(Graph(3, {{0, 1}}), {0}), PreconditionError);
}

TEST_CASE("every vertex of U gets an outgoing arc") {
  CorpusSpec spec = CorpusSpec::parse("enumerate:2..5");
  for (const Graph& g : enumerate_graphs(spec)) {
    for (const VertexSet& u : subsets_for(g, SubsetPolicy::parse("all-subsets"), true)) {
      const OrientedIncidence inc = oriented_incidence(g, u);
      for (Vertex v : u) CHECK(inc.out_degree[v] >= 1);
      for (const Arc& a : inc.arcs) {
        const bool tail_in = std::binary_search(u.begin(), u.end(), a.tail);
        const bool head_in = std::binary_search(u.begin(), u.end(), a.head);
        if (tail_in != head_in) CHECK(tail_in);
        CHECK(a.first_part == (tail_in || head_in));
      }
      const auto s = inc.signed_matrix();
      for (std::size_t k = 0; k < inc.arcs.size(); ++k) {
        CHECK(s[inc.arcs[k].head][k] == 1);
        CHECK(s[inc.arcs[k].tail][k] == -1);
      }
    }
  }
}

TEST_CASE("edge Gram matrices") {
  const SymMatrix one = edge_gram(oriented_incidence(make_complete(2), {0}));
  REQUIRE(one.order() == 1);
  CHECK(one(0, 0) == 2);

  const SymMatrix p3 = edge_gram(oriented_incidence(make_path(3), {0}));
  const Spectrum sp = sym_eigenvalues(p3);
  CHECK(p3(0, 1) == 1);
  const std::vector<double> q = oracle::spectrum(make_path(3), MatrixKind::SignlessLaplacian);
  CHECK(sp[0] == doctest::Approx(q[0]));
  CHECK(sp[1] == doctest::Approx(q[1]));

  const Spectrum k3 = sym_eigenvalues(edge_gram(oriented_incidence(make_complete(3), {0})));
  CHECK(k3[0] == doctest::Approx(4));
  CHECK(k3[1] == doctest::Approx(1));
  CHECK(k3[2] == doctest::Approx(1));
}

TEST_CASE("spectrum cache returns stored spectra") {
  SpectrumCache cache(2);
  const Graph g = make_cycle(5);
  const Spectrum a = cache.get(g, MatrixKind::SignlessLaplacian);
  const Spectrum b = cache.get(g, MatrixKind::SignlessLaplacian);
  CHECK(a.values == b.values);
  CHECK(cache.hits() == 1);
  cache.get(make_path(4), MatrixKind::Laplacian);
  cache.get(make_path(5), MatrixKind::Laplacian);
  CHECK(cache.size() <= 2);
}
