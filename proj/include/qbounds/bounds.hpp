#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbounds/families.hpp"
#include "qbounds/graph.hpp"
#include "qbounds/spectra.hpp"

namespace qbounds {

// Guard band for every floating comparison made by a checker.
inline constexpr double kEpsilon = 1e-7;

enum class Verdict { Holds, HoldsWithEquality, Violated, IndeterminateNumeric, NotApplicable };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

struct BoundInput {
  std::string graph6;
  std::optional<FamilyParams> params;
  std::optional<VertexSet> subset;  // U, or I for the independent-set corollary
  std::optional<int> m;
  std::string mode;

  std::string describe() const;  // "graph6 [params] [U=..] [m=..] [mode]"
};

struct BoundCertificate {
  std::string bound_id;
  BoundInput input;
  double lhs = 0.0;  // the side the bound says is larger (or equal)
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  bool strict = false;
  // Sign of lhs - rhs decided in exact arithmetic, when such a path exists.
  std::optional<int> exact_sign;
  Verdict verdict = Verdict::NotApplicable;
  std::string witness;  // equality class predicted by the structure ("star", "K3", "P4", ...)
  // False when the claimed equality characterization or strictness
  // disagrees with what was observed on this instance.
  bool claim_consistent = true;
  // A side remark (not the theorem itself) was contradicted on this instance.
  bool finding = false;
  std::string note;
};

// Verdict from lhs, rhs, strict and exact_sign alone; applying it to its own
// output changes nothing.
Verdict recompute_verdict(const BoundCertificate& c);

BoundCertificate not_applicable(std::string bound_id, BoundInput input, std::string note);

// Optional memo shared by the checkers of one worker.
struct CheckContext {
  SpectrumCache* cache = nullptr;
  Spectrum spectrum(const Graph& g, MatrixKind kind) const;
};

BoundCertificate schur_sum(const Graph& g, MatrixKind kind, int m, const CheckContext& ctx = {});
BoundCertificate grone_sum_L(const Graph& g, int m, const CheckContext& ctx = {});
BoundCertificate q1_lower(const Graph& g, const CheckContext& ctx = {});
BoundCertificate q2_lower(const Graph& g, const CheckContext& ctx = {});
BoundCertificate main_q1q2(const Graph& g, const CheckContext& ctx = {});
BoundCertificate l_sum2(const Graph& g, const CheckContext& ctx = {});

// One certificate per claim covering `params`; ids are
// "pr4", "pr5", "pr3" and "pr2(i)".."pr2(v)" with ".q1"/".q2" suffixes where
// a case makes two claims.
std::vector<BoundCertificate> family_props(const FamilyParams& params);

// Certificate oriented as 1 + sum d_i > sum q_i for S_n^+ (the counterexample).
BoundCertificate snplus_refutation(int n, int m);
// Same check on a given graph; not-applicable unless g is a labelling of S_n^+.
BoundCertificate snplus_refutation(const Graph& g, int m, const CheckContext& ctx = {});
bool is_star_plus_edge(const Graph& g);

enum class SandwichMode { Safe, AsWritten };

BoundCertificate t1_sandwich(const Graph& g, const std::vector<Vertex>& subset, SandwichMode mode,
                             const CheckContext& ctx = {});
BoundCertificate t1_equality_conditions(const Graph& g, const std::vector<Vertex>& subset, const CheckContext& ctx = {});
BoundCertificate strict_sandwich(const Graph& g, const std::vector<Vertex>& subset, const CheckContext& ctx = {});
BoundCertificate regular_corollary(const Graph& g, const std::vector<Vertex>& subset, const CheckContext& ctx = {});
BoundCertificate independent_set_corollary(const Graph& g, const VertexSet& independent, const CheckContext& ctx = {});
BoundCertificate gm_qanalog(const Graph& g, const VertexSet& subset, bool refined, const CheckContext& ctx = {});

// What a checker needs beyond the graph.
enum class BoundArgs { None, M, Subset, Family };

struct BoundRequest {
  Graph graph;
  std::optional<FamilyParams> params;
  std::optional<std::vector<Vertex>> subset;
  std::optional<int> m;
  MatrixKind kind = MatrixKind::SignlessLaplacian;
};

struct BoundSpec {
  std::string id;        // registry key, e.g. "t1_sandwich:as-written"
  BoundArgs args = BoundArgs::None;
  bool theorem = true;   // false: failures are findings and never set the exit status
  std::function<std::vector<BoundCertificate>(const BoundRequest&, const CheckContext&)> run;
};

const std::vector<BoundSpec>& bound_registry();
// Accepts registry ids; "name:mode" picks a mode. Throws PreconditionError for unknown ids.
const BoundSpec& find_bound(std::string_view id);

// A certificate counts against its bound when the verdict is violated or the
// claimed equality class / strictness did not match.
bool is_failure(const BoundCertificate& c);

// JSON object per certificate; numbers at 12 significant digits.
std::string certificate_json(const BoundCertificate& c);
std::string certificates_json(const std::vector<BoundCertificate>& certs);
std::string certificates_csv(const std::vector<BoundCertificate>& certs);
std::string certificates_table(const std::vector<BoundCertificate>& certs);

// Shortest decimal rendering at 12 significant digits.
std::string format_number(double x);

}  // namespace qbounds
