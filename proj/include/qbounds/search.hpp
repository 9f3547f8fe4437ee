#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qbounds/bounds.hpp"
#include "qbounds/families.hpp"
#include "qbounds/graph.hpp"

namespace qbounds {

struct CorpusSpec {
  enum class Source { Enumerate, File, Family, Sample };
  enum class Dedup { None, BySpectrum };

  Source source = Source::Enumerate;
  int n_min = 1;
  int n_max = 1;
  std::string path;                   // File
  std::vector<std::string> families;  // Family: literals, each integer may be a range a..b
  int sample_count = 0;               // Sample: random labelled graphs on n_min vertices
  std::uint64_t seed = 0;
  bool connected_only = true;
  Dedup dedup = Dedup::None;

  // "enumerate:3..7", "file:graphs.g6", "family:snplus:5..12;H:1..2,1..3,1",
  // "sample:8:200:42" (n, count, seed). Throws PreconditionError.
  static CorpusSpec parse(std::string_view text);
  std::string describe() const;
};

struct CorpusItem {
  std::size_t index = 0;  // position in the emitted stream
  Graph graph;
  std::optional<FamilyParams> params;
};

struct CorpusError {
  std::size_t line = 0;  // 1-based line of a file source, 0 otherwise
  std::string input;
  std::string message;
};

// Single-producer stream over a corpus in a fixed order: enumeration walks n
// upward and, for each n, every edge mask in graph6 bit order.
class CorpusStream {
 public:
  explicit CorpusStream(CorpusSpec spec);

  bool next(CorpusItem& item);

  const std::vector<CorpusError>& errors() const noexcept { return errors_; }
  // Labelled graphs generated per order before any filter (enumeration only).
  const std::map<int, std::uint64_t>& raw_counts() const noexcept { return raw_counts_; }
  // Graphs dropped as spectral duplicates, and those among them whose cheap
  // invariants prove they are not isomorphic to the kept representative.
  std::uint64_t duplicates() const noexcept { return duplicates_; }
  std::uint64_t collisions() const noexcept { return collisions_; }

 private:
  bool produce(Graph& g, std::optional<FamilyParams>& params);
  bool admit(const Graph& g);

  CorpusSpec spec_;
  std::size_t emitted_ = 0;
  std::vector<CorpusError> errors_;
  std::map<int, std::uint64_t> raw_counts_;
  std::uint64_t duplicates_ = 0;
  std::uint64_t collisions_ = 0;
  std::map<std::string, std::string> dedup_;  // spectrum key -> invariant key

  int n_ = 0;
  std::uint64_t mask_ = 0;
  std::uint64_t mask_end_ = 0;
  std::unique_ptr<std::ifstream> file_;
  std::size_t line_ = 0;
  std::vector<std::pair<Graph, FamilyParams>> family_graphs_;
  std::vector<Graph> family_plain_;
  std::size_t family_pos_ = 0;
  int sample_done_ = 0;
};

// Materializes the whole stream.
std::vector<Graph> enumerate_graphs(const CorpusSpec& spec);

// Graph with the given edge mask, bit k standing for the k-th pair in graph6
// order (j = 1..n-1, i = 0..j-1).
Graph graph_from_mask(int n, std::uint64_t mask);

struct SubsetPolicy {
  enum class Mode { AllSubsets, AllSingletons, TopDegreePair, IndependentSets, Random };
  Mode mode = Mode::AllSingletons;
  int k = 1;  // Random: subsets drawn per graph
  std::uint64_t seed = 0;

  // "all-subsets", "all-singletons", "top-degree-pair", "independent-sets",
  // "random:k:seed".
  static SubsetPolicy parse(std::string_view text);
  std::string describe() const;
};

// Order cap for all-subsets and independent-sets outside enumeration mode.
inline constexpr int kMaxSubsetOrder = 12;

// Subsets the policy yields for g, in a deterministic order. Throws
// PreconditionError when an exhaustive policy meets an order above the cap and
// `enumeration` is false.
std::vector<std::vector<Vertex>> subsets_for(const Graph& g, const SubsetPolicy& policy, bool enumeration);

struct SlackWitness {
  double slack = 0.0;
  std::string input;
  std::size_t index = 0;
};

struct BoundSummary {
  std::string id;
  bool theorem = true;
  std::map<Verdict, std::uint64_t> totals;
  std::uint64_t instances = 0;
  std::uint64_t equality_count = 0;
  std::vector<std::string> equality_witnesses;  // first max_listed, in stream order
  std::optional<SlackWitness> min_positive_slack;
  std::uint64_t failure_count = 0;  // violations for theorems, findings otherwise
  std::vector<std::string> failures;
  std::uint64_t remark_count = 0;  // certificates flagged with a finding
  std::vector<std::string> remarks;
};

struct SweepReport {
  std::string corpus;
  std::string subsets;
  std::uint64_t graphs = 0;
  std::uint64_t instances = 0;
  std::map<int, std::uint64_t> raw_counts;
  bool exhaustive = true;  // raw counts match 2^C(n,2) for every enumerated n
  std::uint64_t duplicates = 0;
  std::uint64_t collisions = 0;
  std::vector<BoundSummary> bounds;
  std::uint64_t error_count = 0;
  std::vector<CorpusError> errors;
  std::vector<BoundCertificate> certificates;  // only when requested

  std::uint64_t theorem_violations() const;
  const BoundSummary& bound(std::string_view id) const;
  std::string to_json() const;
};

struct SweepOptions {
  int workers = 1;
  bool collect_certificates = false;
  std::size_t max_listed = 1000;
  std::size_t batch = 2048;
};

// Reference implementation: one graph at a time on the calling thread.
SweepReport run_sweep_serial(const CorpusSpec& corpus, const std::vector<std::string>& bounds,
                             const SubsetPolicy& subsets, const SweepOptions& options = {});
// OpenMP over batches of graphs; results merged in stream order, so the report
// does not depend on the worker count.
SweepReport run_sweep(const CorpusSpec& corpus, const std::vector<std::string>& bounds, const SubsetPolicy& subsets,
                      const SweepOptions& options = {});

struct Extremes {
  std::vector<std::string> equality_witnesses;
  std::optional<SlackWitness> min_positive_slack;
};

Extremes find_extremes(const SweepReport& report, std::string_view bound_id);

}  // namespace qbounds
