#include "qbounds/families.hpp"

#include <algorithm>
#include <charconv>

#include "qbounds/errors.hpp"

namespace qbounds {

std::string FamilyParams::to_string() const {
  return std::string(adjacent ? "G(" : "H(") + std::to_string(p) + "," + std::to_string(r) + "," +
         std::to_string(s) + ")";
}

namespace {

void check_params(const FamilyParams& fp) {
  if (fp.p < 0 || fp.r < 0 || fp.s < 0) throw PreconditionError("family parameters must be non-negative");
  if (fp.r < fp.s) throw PreconditionError("family parameters must satisfy r >= s");
  if (fp.p + fp.r + fp.s == 0) throw PreconditionError("degenerate family: p + r + s must be >= 1");
}

}  // namespace

Graph make_family(const FamilyParams& fp) {
  check_params(fp);
  const Vertex u = 0;
  const Vertex v = 1;
  std::vector<Edge> edges;
  if (fp.adjacent) edges.emplace_back(u, v);
  Vertex next = 2;
  for (int i = 0; i < fp.p; ++i, ++next) {
    edges.emplace_back(u, next);
    edges.emplace_back(v, next);
  }
  for (int i = 0; i < fp.r; ++i, ++next) edges.emplace_back(u, next);
  for (int i = 0; i < fp.s; ++i, ++next) edges.emplace_back(v, next);
  return Graph(fp.order(), std::move(edges));
}

Graph make_star(int n) {
  if (n < 1) throw PreconditionError("star: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph(n, std::move(edges));
}

Graph make_complete(int n) {
  if (n < 1) throw PreconditionError("complete: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return Graph(n, std::move(edges));
}

Graph make_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw PreconditionError("complete_bipartite: both sides must be >= 1");
  std::vector<Edge> edges;
  for (Vertex x = 0; x < a; ++x) {
    for (Vertex y = a; y < a + b; ++y) edges.emplace_back(x, y);
  }
  return Graph(a + b, std::move(edges));
}

Graph make_complete_split(int p) {
  if (p < 1) throw PreconditionError("complete_split: p must be >= 1");
  std::vector<Edge> edges{{0, 1}};
  for (Vertex x = 2; x < p + 2; ++x) {
    edges.emplace_back(0, x);
    edges.emplace_back(1, x);
  }
  return Graph(p + 2, std::move(edges));
}

Graph make_star_plus_edge(int n) {
  if (n < 3) throw PreconditionError("star_plus_edge: n must be >= 3");
  return add_edge(make_star(n), Edge(1, 2));
}

Graph make_path(int n) {
  if (n < 1) throw PreconditionError("path: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph make_cycle(int n) {
  if (n < 3) throw PreconditionError("cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(edges));
}

Graph make_union_with_isolated(const Graph& g, int t) {
  if (t < 0) throw PreconditionError("union_with_isolated: t must be >= 0");
  return Graph(g.order() + t, g.edges());
}

namespace {

std::vector<int> parse_ints(std::string_view args, std::string_view literal) {
  std::vector<int> out;
  while (!args.empty()) {
    const auto comma = args.find(',');
    const std::string_view item = args.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw PreconditionError("bad integer '" + std::string(item) + "' in family literal '" + std::string(literal) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

NamedGraph make_named(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) throw PreconditionError("family literal needs name:args, got '" + std::string(literal) + "'");
  const std::string_view name = literal.substr(0, colon);
  const std::vector<int> a = parse_ints(literal.substr(colon + 1), literal);
  auto want = [&](std::size_t k) {
    if (a.size() != k) {
      throw PreconditionError("family '" + std::string(name) + "' takes " + std::to_string(k) + " argument(s)");
    }
  };
  if (name == "H" || name == "G") {
    want(3);
    FamilyParams fp{a[0], a[1], a[2], name == "G"};
    return {make_family(fp), fp};
  }
  if (name == "star") {
    want(1);
    return {make_star(a[0]), {}};
  }
  if (name == "K" || name == "complete") {
    want(1);
    return {make_complete(a[0]), {}};
  }
  if (name == "Kab") {
    want(2);
    return {make_complete_bipartite(a[0], a[1]), {}};
  }
  if (name == "csplit") {
    want(1);
    return {make_complete_split(a[0]), {}};
  }
  if (name == "snplus") {
    want(1);
    return {make_star_plus_edge(a[0]), {}};
  }
  if (name == "path") {
    want(1);
    return {make_path(a[0]), {}};
  }
  if (name == "cycle") {
    want(1);
    return {make_cycle(a[0]), {}};
  }
  throw PreconditionError("unknown family '" + std::string(name) + "'");
}

ExtractedH extract_H(const Graph& g) {
  if (g.order() < 3) throw PreconditionError("extract_H: n must be >= 3");
  if (!is_connected(g)) throw PreconditionError("extract_H: graph must be connected");
  const DegreeSequence ds = degree_sequence(g);
  ExtractedH out;
  out.u = ds.first;
  out.v = ds.second;
  const bool adjacent = g.adjacent(out.u, out.v);

  VertexSet s1, s2, s3;
  for (Vertex w = 0; w < g.order(); ++w) {
    if (w == out.u || w == out.v) continue;
    const bool nu = g.adjacent(out.u, w);
    const bool nv = g.adjacent(out.v, w);
    if (nu && nv) {
      s2.push_back(w);
    } else if (nu) {
      s1.push_back(w);
    } else if (nv) {
      s3.push_back(w);
    }
  }
  out.params = FamilyParams{static_cast<int>(s2.size()), static_cast<int>(s1.size()), static_cast<int>(s3.size()), adjacent};
  out.vertex_map = {out.u, out.v};
  for (const VertexSet* part : {&s2, &s1, &s3}) out.vertex_map.insert(out.vertex_map.end(), part->begin(), part->end());
  out.h = make_family(out.params);
  return out;
}

FamilyRegime regime_of(const FamilyParams& fp) {
  if (fp.r < fp.s || fp.p < 0 || fp.s < 0) return FamilyRegime::Unsupported;
  if (!fp.adjacent) {
    if (fp.p >= 1 && fp.s >= 1) return FamilyRegime::HGeneral;
    if (fp.p >= 1 && fp.r >= 1 && fp.s == 0) return FamilyRegime::HNoS;
  } else {
    if (fp.p == 0 && fp.s >= 1) return FamilyRegime::GNoP;
    if (fp.p >= 1 && fp.s >= 1) return FamilyRegime::GGeneral;
  }
  return FamilyRegime::Unsupported;
}

std::string_view to_string(FamilyRegime regime) {
  switch (regime) {
    case FamilyRegime::HGeneral: return "pr4";
    case FamilyRegime::HNoS: return "pr5";
    case FamilyRegime::GNoP: return "pr3";
    case FamilyRegime::GGeneral: return "pr2";
    case FamilyRegime::Unsupported: return "unsupported";
  }
  return "?";
}

namespace {

FamilyRegime supported_regime(const FamilyParams& fp) {
  const FamilyRegime regime = regime_of(fp);
  if (regime == FamilyRegime::Unsupported) {
    throw UnsupportedError("no closed-form quotient matrix for " + fp.to_string());
  }
  return regime;
}

}  // namespace

RationalMatrix family_quotient(const FamilyParams& fp) {
  const long long p = fp.p, r = fp.r, s = fp.s;
  switch (supported_regime(fp)) {
    case FamilyRegime::HGeneral:
      return RationalMatrix(5, {{p + r, 0, p, r, 0}, {0, p + s, p, 0, s}, {1, 1, 2, 0, 0}, {1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}});
    case FamilyRegime::HNoS:
      return RationalMatrix(4, {{p + r, 0, p, r}, {0, p, p, 0}, {1, 1, 2, 0}, {1, 0, 0, 1}});
    case FamilyRegime::GNoP:
      return RationalMatrix(4, {{r + 1, 1, r, 0}, {1, s + 1, 0, s}, {1, 0, 1, 0}, {0, 1, 0, 1}});
    case FamilyRegime::GGeneral:
      return RationalMatrix(5, {{p + r + 1, 1, p, r, 0}, {1, p + s + 1, p, 0, s}, {1, 1, 2, 0, 0}, {1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}});
    case FamilyRegime::Unsupported: break;
  }
  throw UnsupportedError("no closed-form quotient matrix for " + fp.to_string());
}

std::vector<int> family_block_sizes(const FamilyParams& fp) {
  switch (supported_regime(fp)) {
    case FamilyRegime::HGeneral:
    case FamilyRegime::GGeneral: return {1, 1, fp.p, fp.r, fp.s};
    case FamilyRegime::HNoS: return {1, 1, fp.p, fp.r};
    case FamilyRegime::GNoP: return {1, 1, fp.r, fp.s};
    case FamilyRegime::Unsupported: break;
  }
  return {};
}

RationalPoly family_char_poly(const FamilyParams& fp) {
  const long long p = fp.p, r = fp.r, s = fp.s;
  auto poly = [](std::initializer_list<long long> low_to_high) {
    std::vector<Rational> c;
    for (long long x : low_to_high) c.emplace_back(x);
    return RationalPoly(std::move(c));
  };
  switch (supported_regime(fp)) {
    case FamilyRegime::HGeneral:
      return poly({0,
                   (s + r) * p + p * p + 2 * p,
                   (-2 * r - p - 4) * s + (-2 * p - 2) * r - 2 * p * p - 6 * p - 2,
                   (r + p + 3) * s + (p + 3) * r + p * p + 6 * p + 5,
                   -(s + r + p + 6),
                   1});
    case FamilyRegime::HNoS:
      return poly({0, -p * r - p * p - 2 * p, (p + 2) * r + p * p + 4 * p + 2, -r - 2 * p - 3, 1});
    case FamilyRegime::GNoP:
      return poly({0, -r - s - 2, (r + 2) * s + 2 * r + 5, -r - s - 4, 1});
    case FamilyRegime::GGeneral:
      return poly({-4 * p,
                   (p + 2) * s + (p + 2) * r + p * p + 12 * p + 4,
                   (-2 * r - 2 * p - 5) * s + (-2 * p - 5) * r - 2 * p * p - 14 * p - 12,
                   (r + p + 4) * s + (p + 4) * r + p * p + 8 * p + 13,
                   -s - r - 2 * p - 6,
                   1});
    case FamilyRegime::Unsupported: break;
  }
  return {};
}

std::vector<double> family_extra_eigenvalues(const FamilyParams& fp) {
  const FamilyRegime regime = supported_regime(fp);
  std::vector<double> extra;
  for (int i = 0; i + 1 < fp.p; ++i) extra.push_back(2.0);
  const int ones = regime == FamilyRegime::HNoS ? fp.r - 1 : fp.r + fp.s - 2;
  for (int i = 0; i < ones; ++i) extra.push_back(1.0);
  return extra;
}

}  // namespace qbounds
