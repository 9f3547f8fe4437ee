#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbounds/graph.hpp"
#include "qbounds/linalg.hpp"

namespace qbounds {

// Two top-degree vertices u, v with p common neighbours (S2), r neighbours
// exclusive to u (S1) and s exclusive to v (S3). adjacent selects G(p,r,s)
// (u ~ v) over H(p,r,s).
struct FamilyParams {
  int p = 0;
  int r = 0;
  int s = 0;
  bool adjacent = false;

  int order() const { return p + r + s + 2; }
  int d1() const { return p + r + (adjacent ? 1 : 0); }
  int d2() const { return p + s + (adjacent ? 1 : 0); }
  std::string to_string() const;  // "H(p,r,s)" or "G(p,r,s)"

  bool operator==(const FamilyParams&) const = default;
};

// Vertex layout [u, v, S2..., S1..., S3...].
Graph make_family(const FamilyParams& params);

Graph make_star(int n);
Graph make_complete(int n);
Graph make_complete_bipartite(int a, int b);
Graph make_complete_split(int p);  // K2 join p isolated vertices
Graph make_star_plus_edge(int n);
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_union_with_isolated(const Graph& g, int t);

struct NamedGraph {
  Graph graph;
  std::optional<FamilyParams> params;  // set for H:/G: literals
};

// Family literal "name:args": star:5, K:4, H:1,2,1, G:0,3,2, snplus:6,
// Kab:2,3, csplit:4, path:4, cycle:5.
NamedGraph make_named(std::string_view literal);

struct ExtractedH {
  Graph h;  // relabelled to the make_family layout
  FamilyParams params;
  Vertex u = -1;
  Vertex v = -1;
  std::vector<Vertex> vertex_map;  // h label -> g label
};

ExtractedH extract_H(const Graph& g);

enum class FamilyRegime {
  HGeneral,  // H, p >= 1, s >= 1: 5x5 matrix
  HNoS,      // H, p >= 1, r >= 1, s = 0: 4x4 matrix
  GNoP,      // G, p = 0, r, s >= 1: 4x4 matrix
  GGeneral,  // G, p >= 1, s >= 1: 5x5 matrix
  Unsupported,
};

FamilyRegime regime_of(const FamilyParams& params);
std::string_view to_string(FamilyRegime regime);

// The closed-form equitable quotient M for the regime; UnsupportedError otherwise.
RationalMatrix family_quotient(const FamilyParams& params);
// Block sizes of M in row order.
std::vector<int> family_block_sizes(const FamilyParams& params);
// The closed-form polynomial f instantiated at the parameters.
RationalPoly family_char_poly(const FamilyParams& params);
// Eigenvalues of Q(make_family(params)) outside the quotient: 2 repeated p-1
// times and 1 repeated r+s-2 times (r-1 when s = 0).
std::vector<double> family_extra_eigenvalues(const FamilyParams& params);

}  // namespace qbounds
