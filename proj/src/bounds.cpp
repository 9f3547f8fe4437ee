#include "qbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "qbounds/errors.hpp"
#include "qbounds/partitions.hpp"

namespace qbounds {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::HoldsWithEquality: return "holds-with-equality";
    case Verdict::Violated: return "violated";
    case Verdict::IndeterminateNumeric: return "indeterminate-numeric";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::Holds, Verdict::HoldsWithEquality, Verdict::Violated, Verdict::IndeterminateNumeric,
                    Verdict::NotApplicable}) {
    if (to_string(v) == text) return v;
  }
  throw PreconditionError("unknown verdict '" + std::string(text) + "'");
}

namespace {

std::string join_vertices(const std::vector<Vertex>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vs[i]);
  }
  return out;
}

}  // namespace

std::string BoundInput::describe() const {
  std::string out = graph6;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += ' ';
    out += part;
  };
  if (params) add(params->to_string());
  if (subset) add("U=" + join_vertices(*subset));
  if (m) add("m=" + std::to_string(*m));
  if (!mode.empty()) add(mode);
  return out;
}

Verdict recompute_verdict(const BoundCertificate& c) {
  if (c.verdict == Verdict::NotApplicable) return Verdict::NotApplicable;
  const double slack = c.lhs - c.rhs;
  if (slack < -kEpsilon) return Verdict::Violated;
  if (slack > kEpsilon) return Verdict::Holds;
  if (c.exact_sign) {
    if (*c.exact_sign > 0) return Verdict::Holds;
    if (*c.exact_sign < 0) return Verdict::Violated;
    return Verdict::HoldsWithEquality;
  }
  return c.strict ? Verdict::IndeterminateNumeric : Verdict::HoldsWithEquality;
}

BoundCertificate not_applicable(std::string bound_id, BoundInput input, std::string note) {
  BoundCertificate c;
  c.bound_id = std::move(bound_id);
  c.input = std::move(input);
  c.verdict = Verdict::NotApplicable;
  c.note = std::move(note);
  return c;
}

Spectrum CheckContext::spectrum(const Graph& g, MatrixKind kind) const {
  return cache ? cache->get(g, kind) : spectrum_of(g, kind);
}

namespace {

void append_note(BoundCertificate& c, const std::string& text) {
  if (!c.note.empty()) c.note += "; ";
  c.note += text;
}

// Fills slack and verdict, then compares the outcome with what the claim
// predicts: strict claims must not tie, and when `equality_predicted` is
// given, equality must be observed exactly when it is predicted.
void finalize(BoundCertificate& c, std::optional<bool> equality_predicted = std::nullopt) {
  c.slack = c.lhs - c.rhs;
  c.verdict = Verdict::Holds;  // anything but NotApplicable
  c.verdict = recompute_verdict(c);
  if (c.strict && c.verdict == Verdict::HoldsWithEquality) {
    c.claim_consistent = false;
    append_note(c, "strict inequality fails: tie");
  }
  if (equality_predicted && (c.verdict == Verdict::Holds || c.verdict == Verdict::HoldsWithEquality)) {
    const bool equal = c.verdict == Verdict::HoldsWithEquality;
    if (equal != *equality_predicted) {
      c.claim_consistent = false;
      append_note(c, equal ? "equality outside the predicted class" : "predicted equality not attained");
    }
  }
}

BoundInput graph_input(const Graph& g) { return BoundInput{to_graph6(g), std::nullopt, std::nullopt, std::nullopt, {}}; }

BoundInput subset_input(const Graph& g, const std::vector<Vertex>& subset, std::string mode = {}) {
  BoundInput in = graph_input(g);
  in.subset = subset;
  in.mode = std::move(mode);
  return in;
}

RationalMatrix exact_matrix(const Graph& g, MatrixKind kind) {
  const SymMatrix a = build_matrix(g, kind);
  RationalMatrix r(g.order());
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < g.order(); ++j) r(i, j) = Rational(std::llround(a(i, j)));
  }
  return r;
}

// Exact description of a spectrum as the roots of `poly` plus known rational
// eigenvalues outside it.
struct ExactSpectrum {
  RationalPoly poly;
  std::vector<Rational> extras;

  int above(const Rational& t) const {
    int k = count_roots_above(poly, t);
    for (const Rational& e : extras) k += e > t ? 1 : 0;
    return k;
  }
  int at(const Rational& t) const {
    int k = root_multiplicity(poly, t);
    for (const Rational& e : extras) k += e == t ? 1 : 0;
    return k;
  }
  // Sign of (k-th largest eigenvalue - t), 1-based k.
  int sign_of_eigenvalue(int k, const Rational& t) const {
    const int a = above(t);
    if (a >= k) return 1;
    if (a + at(t) >= k) return 0;
    return -1;
  }
};

ExactSpectrum exact_spectrum(const Graph& g, MatrixKind kind) { return {char_poly_exact(exact_matrix(g, kind)), {}}; }

// Below this order the full characteristic polynomial is cheap enough for
// exact tie-breaking.
constexpr int kExactOrderLimit = 24;

bool in_band(double slack) { return std::abs(slack) <= kEpsilon; }

bool connected_with_proper_subset(const Graph& g, const std::vector<Vertex>& subset, std::string* why) {
  const int m = static_cast<int>(subset.size());
  if (m <= 0 || m >= g.order()) {
    *why = "requires 0 < |U| < n";
    return false;
  }
  if (!is_connected(g)) {
    *why = "requires a connected graph";
    return false;
  }
  return true;
}

}  // namespace

BoundCertificate schur_sum(const Graph& g, MatrixKind kind, int m, const CheckContext& ctx) {
  BoundInput in = graph_input(g);
  in.m = m;
  in.mode = std::string(to_string(kind));
  const std::string id = "schur_sum";
  if (kind == MatrixKind::Adjacency) return not_applicable(id, in, "defined for L and Q only");
  if (m < 1 || m > g.order()) return not_applicable(id, in, "requires 1 <= m <= n");
  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.lhs = ctx.spectrum(g, kind).sum_top(m);
  c.rhs = degree_sequence(g).sum_top(m);
  finalize(c, m == g.order() ? std::optional<bool>(true) : std::nullopt);
  if (m == g.order()) c.witness = "trace";
  return c;
}

BoundCertificate grone_sum_L(const Graph& g, int m, const CheckContext& ctx) {
  BoundInput in = graph_input(g);
  in.m = m;
  const std::string id = "grone_sum_L";
  if (m < 1 || m >= g.order()) return not_applicable(id, in, "requires 1 <= m < n");
  if (!is_connected(g)) return not_applicable(id, in, "requires a connected graph");
  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.lhs = ctx.spectrum(g, MatrixKind::Laplacian).sum_top(m);
  c.rhs = degree_sequence(g).sum_top(m) + 1.0;
  finalize(c);
  return c;
}

BoundCertificate q1_lower(const Graph& g, const CheckContext& ctx) {
  const std::string id = "q1_lower";
  if (g.order() < 4) return not_applicable(id, graph_input(g), "requires n >= 4");
  if (!is_connected(g)) return not_applicable(id, graph_input(g), "requires a connected graph");
  BoundCertificate c;
  c.bound_id = id;
  c.input = graph_input(g);
  c.lhs = ctx.spectrum(g, MatrixKind::SignlessLaplacian).at1(1);
  c.rhs = degree_sequence(g).d1() + 1.0;
  const bool star = is_star(g);
  if (star) c.witness = "star";
  finalize(c, star);
  return c;
}

BoundCertificate q2_lower(const Graph& g, const CheckContext& ctx) {
  const std::string id = "q2_lower";
  if (g.order() < 2) return not_applicable(id, graph_input(g), "requires n >= 2");
  BoundCertificate c;
  c.bound_id = id;
  c.input = graph_input(g);
  c.lhs = ctx.spectrum(g, MatrixKind::SignlessLaplacian).at1(2);
  c.rhs = degree_sequence(g).d2() - 1.0;
  finalize(c);
  return c;
}

BoundCertificate main_q1q2(const Graph& g, const CheckContext& ctx) {
  const std::string id = "main_q1q2";
  if (g.order() < 3) return not_applicable(id, graph_input(g), "requires n >= 3");
  if (!is_connected(g)) return not_applicable(id, graph_input(g), "requires a connected graph");
  BoundCertificate c;
  c.bound_id = id;
  c.input = graph_input(g);
  c.lhs = ctx.spectrum(g, MatrixKind::SignlessLaplacian).sum_top(2);
  const DegreeSequence ds = degree_sequence(g);
  c.rhs = ds.d1() + ds.d2() + 1.0;
  const bool k3 = is_triangle(g);
  const bool star = is_star(g);
  if (k3) c.witness = "K3";
  if (star) c.witness = "star";
  finalize(c, k3 || star);
  return c;
}

BoundCertificate l_sum2(const Graph& g, const CheckContext& ctx) {
  const std::string id = "l_sum2";
  if (g.order() < 3) return not_applicable(id, graph_input(g), "requires n >= 3");
  if (!is_connected(g)) return not_applicable(id, graph_input(g), "requires a connected graph");
  BoundCertificate c;
  c.bound_id = id;
  c.input = graph_input(g);
  c.lhs = ctx.spectrum(g, MatrixKind::Laplacian).sum_top(2);
  const DegreeSequence ds = degree_sequence(g);
  c.rhs = ds.d1() + ds.d2() + 1.0;
  const bool star = is_star(g);
  if (star) c.witness = "star";
  finalize(c, star);
  return c;
}

namespace {

// Equitable partition [u], [v], S2, S1, S3 of make_family(params) with empty
// blocks dropped, and the eigenvalues it leaves outside the quotient.
ExactSpectrum family_exact_spectrum(const FamilyParams& fp, const Graph& g) {
  std::vector<VertexSet> blocks{{0}, {1}};
  std::vector<Rational> extras;
  Vertex next = 2;
  const std::pair<int, int> parts[] = {{fp.p, 2}, {fp.r, 1}, {fp.s, 1}};
  for (const auto& [size, diag] : parts) {
    if (size == 0) continue;
    VertexSet block;
    for (int i = 0; i < size; ++i) block.push_back(next++);
    blocks.push_back(std::move(block));
    for (int i = 0; i + 1 < size; ++i) extras.emplace_back(diag);
  }
  const QuotientMatrix q = quotient(g, MatrixKind::SignlessLaplacian, VertexPartition(g.order(), std::move(blocks)));
  return {char_poly_exact(q.b), std::move(extras)};
}

struct FamilyContext {
  FamilyParams fp;
  Graph g;
  Spectrum q;
  ExactSpectrum exact;
  BoundInput input;
};

// Claim q_k > t (strict) or q_k >= t.
BoundCertificate eigenvalue_claim(const FamilyContext& fc, std::string id, int k, const Rational& t, bool strict,
                                  std::optional<bool> equality_predicted = std::nullopt) {
  BoundCertificate c;
  c.bound_id = std::move(id);
  c.input = fc.input;
  c.lhs = fc.q.at1(k);
  c.rhs = to_double(t);
  c.strict = strict;
  if (in_band(c.lhs - c.rhs)) c.exact_sign = fc.exact.sign_of_eigenvalue(k, t);
  finalize(c, equality_predicted);
  return c;
}

}  // namespace

std::vector<BoundCertificate> family_props(const FamilyParams& fp) {
  FamilyContext fc{fp, make_family(fp), {}, {}, {}};
  fc.input = graph_input(fc.g);
  fc.input.params = fp;
  if (!is_connected(fc.g)) return {not_applicable("family_props", fc.input, "family graph is disconnected")};
  fc.q = spectrum_of(fc.g, MatrixKind::SignlessLaplacian);
  fc.exact = family_exact_spectrum(fp, fc.g);

  const long long p = fp.p, r = fp.r, s = fp.s;
  const long long n = fp.order();
  // d_1(G), d_2(G) of the graph itself: in H(p,1,0) the common neighbour can
  // outrank v.
  const DegreeSequence ds = degree_sequence(fc.g);
  const Rational d1(ds.d1()), d2(ds.d2());
  std::vector<BoundCertificate> out;
  if (!fp.adjacent) {
    if (p >= 1 && s >= 1) {
      out.push_back(eigenvalue_claim(fc, "pr4", 2, d2, true));
    } else if (p >= 1 && r >= 1 && s == 0) {
      const bool p4 = p == 1 && r == 1;
      auto c = eigenvalue_claim(fc, "pr5", 2, d2, false, p4);
      if (p4) c.witness = "P4";
      out.push_back(std::move(c));
    }
  } else if (p == 0) {
    if (r >= 1 && s >= 1) {
      BoundCertificate c;
      c.bound_id = "pr3";
      c.input = fc.input;
      c.lhs = fc.q.sum_top(2);
      c.rhs = ds.d1() + ds.d2() + 1.0;
      c.strict = true;
      finalize(c);
      out.push_back(std::move(c));
    }
  } else {
    if (p == 1 && r == 1 && s == 0) out.push_back(eigenvalue_claim(fc, "pr2(i)", 2, d2, false, true));
    if (p == 1 && r == s) {
      out.push_back(eigenvalue_claim(fc, "pr2(ii).q1", 1, d1 + Rational(3, 2), true));
      out.push_back(eigenvalue_claim(fc, "pr2(ii).q2", 2, d2 - Rational(1, 2), true));
    }
    if (p >= 2 && r == s) out.push_back(eigenvalue_claim(fc, "pr2(iii)", 1, d1 + 2, true));
    if (r >= s + 3) out.push_back(eigenvalue_claim(fc, "pr2(iv)", 2, d2, true));
    if (r == s + 1 || r == s + 2) {
      const Rational pn(p, n);
      out.push_back(eigenvalue_claim(fc, "pr2(v).q1", 1, d1 + 1 + pn, true));
      out.push_back(eigenvalue_claim(fc, "pr2(v).q2", 2, d2 - pn, true));
    }
  }
  if (out.empty()) out.push_back(not_applicable("family_props", fc.input, "no claim covers " + fp.to_string()));
  return out;
}

bool is_star_plus_edge(const Graph& g) {
  const int n = g.order();
  if (n < 4 || static_cast<int>(g.size()) != n || !is_connected(g)) return false;
  std::vector<int> d = degree_sequence(g).values;
  std::vector<int> want(n, 1);
  want[0] = n - 1;
  want[1] = want[2] = 2;
  return d == want;
}

BoundCertificate snplus_refutation(const Graph& g, int m, const CheckContext& ctx) {
  BoundInput in = graph_input(g);
  in.m = m;
  const std::string id = "snplus_refutation";
  const int n = g.order();
  if (!is_star_plus_edge(g)) return not_applicable(id, in, "graph is not a star plus one edge");
  if (n < 5) return not_applicable(id, in, "requires n >= 5");
  if (m < 3 || m > n) return not_applicable(id, in, "requires 3 <= m <= n");
  const Spectrum q = ctx.spectrum(g, MatrixKind::SignlessLaplacian);
  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.lhs = 1.0 + degree_sequence(g).sum_top(m);
  c.rhs = q.sum_top(m);
  c.strict = true;
  finalize(c);
  if (c.verdict == Verdict::Holds) c.witness = "counterexample-confirmed";
  const double nn = n;
  const bool q1_ok = q.at1(1) > nn && q.at1(1) < nn + 1.0 / nn;
  const bool q2_ok = q.at1(2) > 3.0 - 2.5 / nn && q.at1(2) < 3.0 - 1.0 / nn;
  if (!q1_ok || !q2_ok) {
    c.finding = true;
    append_note(c, std::string("localization fails for ") + (q1_ok ? "q2" : "q1"));
  }
  return c;
}

BoundCertificate snplus_refutation(int n, int m) {
  if (n < 5 || m < 3 || m > n) {
    BoundInput in;
    in.m = m;
    in.mode = "n=" + std::to_string(n);
    return not_applicable("snplus_refutation", in, "requires n >= 5 and 3 <= m <= n");
  }
  return snplus_refutation(make_star_plus_edge(n), m);
}

namespace {

struct SandwichParts {
  Rational middle;  // trace of B'
  int cut = 0;
  int outside = 0;
  int m = 0;
};

SandwichParts sandwich_parts(const Graph& g, const std::vector<Vertex>& subset) {
  SandwichParts sp;
  sp.m = static_cast<int>(subset.size());
  sp.middle = t1_quotient(g, subset).b.trace();
  const BoundaryCounts bc = boundary_counts(g, subset);
  sp.cut = bc.cut;
  sp.outside = bc.outside;
  long long du = 0, dbar = 0;
  std::vector<std::uint8_t> in(g.order(), 0);
  for (Vertex u : subset) in[u] = 1;
  for (Vertex v = 0; v < g.order(); ++v) (in[v] ? du : dbar) += g.degree(v);
  const Rational direct = Rational(du) + Rational(dbar + 2LL * bc.outside, g.order() - sp.m);
  if (direct != sp.middle) throw InvariantError("t1 middle term disagrees with trace of B'");
  return sp;
}

bool has_repeats(std::vector<Vertex> subset) {
  std::sort(subset.begin(), subset.end());
  return std::adjacent_find(subset.begin(), subset.end()) != subset.end();
}

// Picks the tighter of two one-sided checks for the certificate's lhs/rhs.
void set_two_sided(BoundCertificate& c, double upper_lhs, double upper_rhs, double lower_lhs, double lower_rhs,
                   std::optional<int> upper_exact = std::nullopt, std::optional<int> lower_exact = std::nullopt) {
  const bool upper_binds = upper_lhs - upper_rhs <= lower_lhs - lower_rhs;
  c.lhs = upper_binds ? upper_lhs : lower_lhs;
  c.rhs = upper_binds ? upper_rhs : lower_rhs;
  c.exact_sign = upper_binds ? upper_exact : lower_exact;
  append_note(c, "upper slack " + format_number(upper_lhs - upper_rhs) + ", lower slack " +
                     format_number(lower_lhs - lower_rhs));
}

}  // namespace

BoundCertificate t1_sandwich(const Graph& g, const std::vector<Vertex>& subset, SandwichMode mode,
                             const CheckContext& ctx) {
  const std::string id = "t1_sandwich";
  BoundInput in = subset_input(g, subset, mode == SandwichMode::Safe ? "safe" : "as-written");
  std::string why;
  if (!connected_with_proper_subset(g, subset, &why)) return not_applicable(id, in, why);
  if (has_repeats(subset)) throw PreconditionError("t1_sandwich: U has repeated vertices");
  const int n = g.order();
  const int m = static_cast<int>(subset.size());
  const SandwichParts sp = sandwich_parts(g, subset);
  const double middle = to_double(sp.middle);
  const Spectrum q = ctx.spectrum(g, MatrixKind::SignlessLaplacian);
  const double upper = q.sum_top(m + 1);
  double lower = 0.0;
  if (mode == SandwichMode::Safe) {
    lower = q.sum_bottom(m + 1);
  } else {
    if (n - m - 1 < 1) return not_applicable(id, in, "as-written lower sum needs q_{n-m-1} with n-m-1 >= 1");
    for (int i = 1; i <= m + 1; ++i) lower += q.at1(n - i);
  }
  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  set_two_sided(c, upper, middle, middle, lower);
  finalize(c);
  if (in_band(upper - middle)) c.witness = "upper";
  if (in_band(middle - lower)) c.witness = c.witness.empty() ? "lower" : "both";
  return c;
}

BoundCertificate t1_equality_conditions(const Graph& g, const std::vector<Vertex>& subset, const CheckContext& ctx) {
  const std::string id = "t1_equality_conditions";
  BoundInput in = subset_input(g, subset);
  std::string why;
  if (!connected_with_proper_subset(g, subset, &why)) return not_applicable(id, in, why);
  if (has_repeats(subset)) throw PreconditionError("t1_equality_conditions: U has repeated vertices");
  const int n = g.order();
  const int m = static_cast<int>(subset.size());
  const SandwichParts sp = sandwich_parts(g, subset);
  const Spectrum q = ctx.spectrum(g, MatrixKind::SignlessLaplacian);

  const VertexSet outside = complement(g, subset);
  bool all_or_none = true;
  for (Vertex u : subset) {
    int k = 0;
    for (Vertex w : outside) k += g.adjacent(u, w) ? 1 : 0;
    if (k != 0 && k != static_cast<int>(outside.size())) all_or_none = false;
  }
  const InducedSubgraph h = induced_subgraph(g, outside);
  const double q1_prime = spectrum_of(h.graph, MatrixKind::SignlessLaplacian).at1(1);
  const double b_prime = static_cast<double>(sp.cut) / (n - m);
  const double target = q1_prime + b_prime;
  bool degrees_match = true;
  for (Vertex w : outside) degrees_match = degrees_match && std::abs(g.degree(w) - target) <= kEpsilon;
  const bool eigen_match = std::abs(q.at1(m + 1) - target) <= kEpsilon;
  const bool structure = all_or_none && eigen_match && degrees_match;

  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.lhs = q.sum_top(m + 1);
  c.rhs = to_double(sp.middle);
  if (structure) c.witness = "almost-equitable";
  finalize(c, structure);
  append_note(c, std::string("all-or-none ") + (all_or_none ? "yes" : "no") + ", q_{m+1} " +
                     format_number(q.at1(m + 1)) + " vs q'_1+b' " + format_number(target));
  return c;
}

BoundCertificate strict_sandwich(const Graph& g, const std::vector<Vertex>& subset, const CheckContext& ctx) {
  const std::string id = "strict_sandwich";
  BoundInput in = subset_input(g, subset);
  std::string why;
  if (!connected_with_proper_subset(g, subset, &why)) return not_applicable(id, in, why);
  if (has_repeats(subset)) throw PreconditionError("strict_sandwich: U has repeated vertices");
  const int n = g.order();
  const int m = static_cast<int>(subset.size());
  const BoundaryCounts bc = boundary_counts(g, subset);
  long long du = 0;
  for (Vertex u : subset) du += g.degree(u);
  const Rational middle = Rational(du) + Rational(4LL * bc.outside, n - m);
  const double mid = to_double(middle);
  const Spectrum q = ctx.spectrum(g, MatrixKind::SignlessLaplacian);
  const double upper = q.sum_top(m);
  const double lower = q.sum_bottom(m);

  // Exact tie-breaking when each side is a single eigenvalue against a
  // rational: m = 1 directly, m = n - 1 through the trace 2|E|.
  std::optional<int> upper_exact, lower_exact;
  if ((in_band(upper - mid) || in_band(mid - lower)) && (m == 1 || m == n - 1) && n <= kExactOrderLimit) {
    const ExactSpectrum ex = exact_spectrum(g, MatrixKind::SignlessLaplacian);
    const Rational two_e(2LL * static_cast<long long>(g.size()));
    if (m == 1) {
      upper_exact = ex.sign_of_eigenvalue(1, middle);
      lower_exact = -ex.sign_of_eigenvalue(n, middle);
    } else {
      upper_exact = -ex.sign_of_eigenvalue(n, two_e - middle);
      lower_exact = ex.sign_of_eigenvalue(1, two_e - middle);
    }
  }

  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.strict = true;
  set_two_sided(c, upper, mid, mid, lower, upper_exact, lower_exact);
  finalize(c);

  // The Claim mu'_{m+1} < |cut|/(n-m) < mu'_1, decided exactly on B'.
  const RationalPoly f = char_poly_exact(t1_quotient(g, subset).b);
  const Rational t(bc.cut, n - m);
  const bool claim_top = count_roots_above(f, t) >= 1;
  const bool claim_bottom = count_roots_below(f, t) >= 1;
  if (!claim_top || !claim_bottom) {
    c.claim_consistent = false;
    append_note(c, std::string("claim fails: ") + (claim_top ? "mu'_{m+1}" : "mu'_1") + " vs |cut|/(n-m) = " +
                       to_string(t));
  }
  return c;
}

BoundCertificate regular_corollary(const Graph& g, const std::vector<Vertex>& subset, const CheckContext& ctx) {
  const std::string id = "regular_corollary";
  BoundInput in = subset_input(g, subset);
  std::string why;
  if (!connected_with_proper_subset(g, subset, &why)) return not_applicable(id, in, why);
  if (!is_regular(g)) return not_applicable(id, in, "requires a regular graph");
  if (has_repeats(subset)) throw PreconditionError("regular_corollary: U has repeated vertices");
  const int n = g.order();
  const int m = static_cast<int>(subset.size());
  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.lhs = ctx.spectrum(g, MatrixKind::Adjacency).sum_top(m + 1);
  c.rhs = 2.0 * boundary_counts(g, subset).outside / (n - m);
  finalize(c);
  if (is_complete_multipartite(g)) {
    c.witness = "complete-multipartite";
    const bool equal = c.verdict == Verdict::HoldsWithEquality;
    if (equal != (m == n - 1)) {
      c.finding = true;
      append_note(c, "multipartite note (equality iff m = n-1) contradicted");
    }
  }
  return c;
}

BoundCertificate independent_set_corollary(const Graph& g, const VertexSet& independent, const CheckContext& ctx) {
  const std::string id = "independent_set_corollary";
  const VertexSet set = normalize_subset(g, independent);
  BoundInput in = subset_input(g, set);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (g.adjacent(set[i], set[j])) throw PreconditionError("independent_set_corollary: I is not independent");
    }
  }
  const int alpha = static_cast<int>(set.size());
  if (alpha < 2) return not_applicable(id, in, "requires |I| >= 2");
  if (!is_connected(g)) return not_applicable(id, in, "requires a connected graph");
  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  long long sum = 0;
  for (Vertex v : set) sum += g.degree(v);
  c.lhs = static_cast<double>(sum);
  c.rhs = static_cast<double>(alpha) / (alpha - 1) * ctx.spectrum(g, MatrixKind::SignlessLaplacian).sum_bottom(alpha - 1);
  finalize(c);
  return c;
}

BoundCertificate gm_qanalog(const Graph& g, const VertexSet& subset, bool refined, const CheckContext& ctx) {
  const std::string id = "gm_qanalog";
  const VertexSet set = normalize_subset(g, subset);
  BoundInput in = subset_input(g, set, refined ? "refined" : "base");
  std::string why;
  if (g.order() < 3) return not_applicable(id, in, "requires n >= 3");
  if (!connected_with_proper_subset(g, set, &why)) return not_applicable(id, in, why);
  const int m = static_cast<int>(set.size());
  const EdgeQuotient eq = edge_partition_quotient(g, set);
  if (eq.trace != eq.identity_value) throw InvariantError("gm_qanalog: tr B1 differs from sum d_u - |E[U]| + m");
  const double base = to_double(eq.identity_value);

  BoundCertificate c;
  c.bound_id = id;
  c.input = in;
  c.lhs = ctx.spectrum(g, MatrixKind::SignlessLaplacian).sum_top(m + 1);
  c.rhs = base;
  if (refined) {
    if (boundary_counts(g, set).outside == 0) {
      append_note(c, "E[U-bar] empty; base bound used");
    } else {
      const AugmentedEdgeQuotient aug = augmented_edge_quotient(g, set);
      const double scale = std::max(1.0, std::abs(aug.identity_value));
      if (std::abs(aug.trace - aug.identity_value) > 1e-9 * scale) {
        throw InvariantError("gm_qanalog: tr B differs from the refined right-hand side");
      }
      c.rhs = base + aug.q1_prime;
      append_note(c, "base rhs " + format_number(base));
    }
  }
  finalize(c);
  return c;
}

namespace {

std::vector<BoundCertificate> one(BoundCertificate c) { return {std::move(c)}; }

BoundInput request_input(const BoundRequest& r) {
  BoundInput in = graph_input(r.graph);
  in.params = r.params;
  in.subset = r.subset;
  in.m = r.m;
  return in;
}

// Runs `check` for the requested m, or for every m in [lo, hi] when none is given.
std::vector<BoundCertificate> over_m(const BoundRequest& r, int lo, int hi, const std::function<BoundCertificate(int)>& check) {
  if (r.m) return one(check(*r.m));
  std::vector<BoundCertificate> out;
  for (int m = lo; m <= hi; ++m) out.push_back(check(m));
  return out;
}

std::vector<BoundCertificate> with_subset(const std::string& id, const BoundRequest& r,
                                          const std::function<BoundCertificate(const std::vector<Vertex>&)>& check) {
  if (!r.subset) return one(not_applicable(id, request_input(r), "requires a vertex subset (--U)"));
  return one(check(*r.subset));
}

bool independent_in(const Graph& g, const std::vector<Vertex>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (g.adjacent(set[i], set[j])) return false;
    }
  }
  return true;
}

std::vector<BoundSpec> build_registry() {
  std::vector<BoundSpec> reg;
  reg.push_back({"schur_sum", BoundArgs::M, true, [](const BoundRequest& r, const CheckContext& ctx) {
                   return over_m(r, 1, r.graph.order(), [&](int m) { return schur_sum(r.graph, r.kind, m, ctx); });
                 }});
  reg.push_back({"grone_sum_L", BoundArgs::M, true, [](const BoundRequest& r, const CheckContext& ctx) {
                   return over_m(r, 1, r.graph.order() - 1, [&](int m) { return grone_sum_L(r.graph, m, ctx); });
                 }});
  reg.push_back({"q1_lower", BoundArgs::None, true,
                 [](const BoundRequest& r, const CheckContext& ctx) { return one(q1_lower(r.graph, ctx)); }});
  reg.push_back({"q2_lower", BoundArgs::None, true,
                 [](const BoundRequest& r, const CheckContext& ctx) { return one(q2_lower(r.graph, ctx)); }});
  reg.push_back({"main_q1q2", BoundArgs::None, true,
                 [](const BoundRequest& r, const CheckContext& ctx) { return one(main_q1q2(r.graph, ctx)); }});
  reg.push_back({"l_sum2", BoundArgs::None, true,
                 [](const BoundRequest& r, const CheckContext& ctx) { return one(l_sum2(r.graph, ctx)); }});
  reg.push_back({"family_props", BoundArgs::Family, true, [](const BoundRequest& r, const CheckContext&) {
                   if (r.params) return family_props(*r.params);
                   if (r.graph.order() < 3 || !is_connected(r.graph)) {
                     return one(not_applicable("family_props", request_input(r), "requires a connected graph, n >= 3"));
                   }
                   const ExtractedH ex = extract_H(r.graph);
                   if (ex.h.order() != r.graph.order() || ex.h.size() != r.graph.size()) {
                     return one(not_applicable("family_props", request_input(r), "graph is not in H(p,r,s) or G(p,r,s)"));
                   }
                   return family_props(ex.params);
                 }});
  reg.push_back({"snplus_refutation", BoundArgs::M, true, [](const BoundRequest& r, const CheckContext& ctx) {
                   return over_m(r, 3, r.graph.order(), [&](int m) { return snplus_refutation(r.graph, m, ctx); });
                 }});
  auto sandwich = [](SandwichMode mode) {
    return [mode](const BoundRequest& r, const CheckContext& ctx) {
      return with_subset("t1_sandwich", r, [&](const auto& u) { return t1_sandwich(r.graph, u, mode, ctx); });
    };
  };
  reg.push_back({"t1_sandwich", BoundArgs::Subset, true, sandwich(SandwichMode::Safe)});
  reg.push_back({"t1_sandwich:safe", BoundArgs::Subset, true, sandwich(SandwichMode::Safe)});
  reg.push_back({"t1_sandwich:as-written", BoundArgs::Subset, false, sandwich(SandwichMode::AsWritten)});
  reg.push_back({"t1_equality_conditions", BoundArgs::Subset, false, [](const BoundRequest& r, const CheckContext& ctx) {
                   return with_subset("t1_equality_conditions", r,
                                      [&](const auto& u) { return t1_equality_conditions(r.graph, u, ctx); });
                 }});
  reg.push_back({"strict_sandwich", BoundArgs::Subset, false, [](const BoundRequest& r, const CheckContext& ctx) {
                   return with_subset("strict_sandwich", r, [&](const auto& u) { return strict_sandwich(r.graph, u, ctx); });
                 }});
  reg.push_back({"regular_corollary", BoundArgs::Subset, true, [](const BoundRequest& r, const CheckContext& ctx) {
                   return with_subset("regular_corollary", r,
                                      [&](const auto& u) { return regular_corollary(r.graph, u, ctx); });
                 }});
  reg.push_back({"independent_set_corollary", BoundArgs::Subset, true, [](const BoundRequest& r, const CheckContext& ctx) {
                   return with_subset("independent_set_corollary", r, [&](const auto& u) {
                     if (!independent_in(r.graph, u)) {
                       return not_applicable("independent_set_corollary", request_input(r), "I is not independent");
                     }
                     return independent_set_corollary(r.graph, u, ctx);
                   });
                 }});
  auto gm = [](bool refined) {
    return [refined](const BoundRequest& r, const CheckContext& ctx) {
      return with_subset("gm_qanalog", r, [&](const auto& u) { return gm_qanalog(r.graph, u, refined, ctx); });
    };
  };
  reg.push_back({"gm_qanalog", BoundArgs::Subset, true, gm(false)});
  reg.push_back({"gm_qanalog:base", BoundArgs::Subset, true, gm(false)});
  reg.push_back({"gm_qanalog:refined", BoundArgs::Subset, true, gm(true)});
  return reg;
}

}  // namespace

const std::vector<BoundSpec>& bound_registry() {
  static const std::vector<BoundSpec> reg = build_registry();
  return reg;
}

const BoundSpec& find_bound(std::string_view id) {
  for (const BoundSpec& b : bound_registry()) {
    if (b.id == id) return b;
  }
  throw PreconditionError("unknown bound id '" + std::string(id) + "'");
}

bool is_failure(const BoundCertificate& c) { return c.verdict == Verdict::Violated || !c.claim_consistent; }

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace qbounds
