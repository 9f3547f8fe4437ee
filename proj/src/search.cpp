#include "qbounds/search.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include <json.hpp>

#include "qbounds/errors.hpp"

namespace qbounds {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PreconditionError("bad integer '" + std::string(text) + "' in " + std::string(what));
  }
  return value;
}

std::pair<int, int> parse_range(std::string_view text, std::string_view what) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(text, what);
    return {v, v};
  }
  return {parse_int(text.substr(0, dots), what), parse_int(text.substr(dots + 2), what)};
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t pair_count(int n) { return static_cast<std::uint64_t>(n) * (n - 1) / 2; }

// FNV-1a, used to give each graph its own random stream.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string rounded_key(const Spectrum& s) {
  std::string key;
  for (double v : s.values) {
    key += std::to_string(std::llround(v * 1e6));
    key += ',';
  }
  return key;
}

// Expands one family literal whose integer arguments may be ranges.
void expand_family(std::string_view literal, std::vector<std::string>& out) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos) throw PreconditionError("family literal needs name:args, got '" + std::string(literal) + "'");
  const std::string name(literal.substr(0, colon));
  std::vector<std::pair<int, int>> ranges;
  for (std::string_view arg : split(literal.substr(colon + 1), ',')) ranges.push_back(parse_range(arg, literal));
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == ranges.size()) {
      std::string lit = name + ":";
      for (std::size_t k = 0; k < cur.size(); ++k) lit += (k ? "," : "") + std::to_string(cur[k]);
      out.push_back(std::move(lit));
      return;
    }
    for (int v = ranges[i].first; v <= ranges[i].second; ++v) {
      cur.push_back(v);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

CorpusSpec CorpusSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw PreconditionError("corpus spec needs kind:args, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  CorpusSpec spec;
  if (kind == "enumerate") {
    spec.source = Source::Enumerate;
    std::tie(spec.n_min, spec.n_max) = parse_range(rest, "corpus spec");
    if (spec.n_min < 1 || spec.n_min > spec.n_max || spec.n_max > 9) {
      throw PreconditionError("enumerate needs 1 <= n_min <= n_max <= 9");
    }
  } else if (kind == "file") {
    spec.source = Source::File;
    spec.path = std::string(rest);
    if (spec.path.empty()) throw PreconditionError("file corpus needs a path");
  } else if (kind == "family") {
    spec.source = Source::Family;
    for (std::string_view lit : split(rest, ';')) {
      if (!lit.empty()) spec.families.emplace_back(lit);
    }
    if (spec.families.empty()) throw PreconditionError("family corpus needs at least one literal");
  } else if (kind == "sample") {
    spec.source = Source::Sample;
    const auto parts = split(rest, ':');
    if (parts.size() != 3) throw PreconditionError("sample corpus is sample:n:count:seed");
    spec.n_min = spec.n_max = parse_int(parts[0], "sample order");
    spec.sample_count = parse_int(parts[1], "sample count");
    spec.seed = static_cast<std::uint64_t>(parse_int(parts[2], "sample seed"));
    if (spec.n_min < 1 || pair_count(spec.n_min) > 64) throw PreconditionError("sample order must be in 1..11");
    if (spec.sample_count < 0) throw PreconditionError("sample count must be >= 0");
  } else {
    throw PreconditionError("unknown corpus kind '" + std::string(kind) + "'");
  }
  return spec;
}

std::string CorpusSpec::describe() const {
  std::string out;
  switch (source) {
    case Source::Enumerate: out = "enumerate:" + std::to_string(n_min) + ".." + std::to_string(n_max); break;
    case Source::File: out = "file:" + path; break;
    case Source::Family: {
      out = "family:";
      for (std::size_t i = 0; i < families.size(); ++i) out += (i ? ";" : "") + families[i];
      break;
    }
    case Source::Sample:
      out = "sample:" + std::to_string(n_min) + ":" + std::to_string(sample_count) + ":" + std::to_string(seed);
      break;
  }
  if (connected_only) out += " connected";
  if (dedup == Dedup::BySpectrum) out += " dedup=Q-spectrum";
  return out;
}

Graph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (mask >> k & 1U) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

CorpusStream::CorpusStream(CorpusSpec spec) : spec_(std::move(spec)) {
  switch (spec_.source) {
    case CorpusSpec::Source::Enumerate:
      if (spec_.n_min < 1 || spec_.n_min > spec_.n_max || spec_.n_max > 9) {
        throw PreconditionError("enumerate needs 1 <= n_min <= n_max <= 9");
      }
      n_ = spec_.n_min;
      mask_ = 0;
      mask_end_ = 1ULL << pair_count(n_);
      break;
    case CorpusSpec::Source::File:
      file_ = std::make_unique<std::ifstream>(spec_.path);
      if (!*file_) throw PreconditionError("cannot open corpus file '" + spec_.path + "'");
      break;
    case CorpusSpec::Source::Family:
      for (const std::string& lit : spec_.families) {
        std::vector<std::string> expanded;
        expand_family(lit, expanded);
        for (const std::string& one : expanded) {
          try {
            NamedGraph ng = make_named(one);
            if (ng.params) {
              family_graphs_.emplace_back(std::move(ng.graph), *ng.params);
            } else {
              family_graphs_.emplace_back(std::move(ng.graph), FamilyParams{-1, -1, -1, false});
            }
          } catch (const PreconditionError&) {
            // Ranges cross invalid parameter combinations (r < s, n too small); skip them.
          }
        }
      }
      break;
    case CorpusSpec::Source::Sample: break;
  }
}

bool CorpusStream::produce(Graph& g, std::optional<FamilyParams>& params) {
  params.reset();
  switch (spec_.source) {
    case CorpusSpec::Source::Enumerate:
      while (n_ <= spec_.n_max) {
        if (mask_ < mask_end_) {
          g = graph_from_mask(n_, mask_++);
          ++raw_counts_[n_];
          return true;
        }
        ++n_;
        if (n_ <= spec_.n_max) {
          mask_ = 0;
          mask_end_ = 1ULL << pair_count(n_);
        }
      }
      return false;
    case CorpusSpec::Source::File: {
      std::string line;
      while (std::getline(*file_, line)) {
        ++line_;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
        if (line.empty()) continue;
        try {
          g = parse_graph6(line);
          return true;
        } catch (const ParseError& e) {
          errors_.push_back({line_, line, e.what()});
        }
      }
      return false;
    }
    case CorpusSpec::Source::Family:
      if (family_pos_ >= family_graphs_.size()) return false;
      g = family_graphs_[family_pos_].first;
      if (family_graphs_[family_pos_].second.p >= 0) params = family_graphs_[family_pos_].second;
      ++family_pos_;
      return true;
    case CorpusSpec::Source::Sample: {
      if (sample_done_ >= spec_.sample_count) return false;
      std::mt19937_64 rng(spec_.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(sample_done_));
      const std::uint64_t bits = pair_count(spec_.n_min);
      std::uint64_t mask = rng();
      if (bits < 64) mask &= (1ULL << bits) - 1;
      ++sample_done_;
      g = graph_from_mask(spec_.n_min, mask);
      return true;
    }
  }
  return false;
}

bool CorpusStream::admit(const Graph& g) {
  if (spec_.connected_only && !is_connected(g)) return false;
  if (spec_.dedup == CorpusSpec::Dedup::None) return true;
  const std::string key = rounded_key(spectrum_of(g, MatrixKind::SignlessLaplacian));
  std::string invariants;
  for (int d : degree_sequence(g).values) invariants += std::to_string(d) + ",";
  invariants += "|" + rounded_key(spectrum_of(g, MatrixKind::Adjacency));
  invariants += "|" + rounded_key(spectrum_of(g, MatrixKind::Laplacian));
  auto [it, inserted] = dedup_.emplace(key, invariants);
  if (inserted) return true;
  ++duplicates_;
  if (it->second != invariants) ++collisions_;
  return false;
}

bool CorpusStream::next(CorpusItem& item) {
  Graph g;
  std::optional<FamilyParams> params;
  while (produce(g, params)) {
    if (!admit(g)) continue;
    item.index = emitted_++;
    item.graph = std::move(g);
    item.params = params;
    return true;
  }
  return false;
}

std::vector<Graph> enumerate_graphs(const CorpusSpec& spec) {
  CorpusStream stream(spec);
  std::vector<Graph> out;
  CorpusItem item;
  while (stream.next(item)) out.push_back(std::move(item.graph));
  return out;
}

SubsetPolicy SubsetPolicy::parse(std::string_view text) {
  SubsetPolicy p;
  if (text == "all-subsets") {
    p.mode = Mode::AllSubsets;
  } else if (text == "all-singletons") {
    p.mode = Mode::AllSingletons;
  } else if (text == "top-degree-pair") {
    p.mode = Mode::TopDegreePair;
  } else if (text == "independent-sets") {
    p.mode = Mode::IndependentSets;
  } else if (text.substr(0, 7) == "random:") {
    const auto parts = split(text.substr(7), ':');
    if (parts.size() != 2) throw PreconditionError("random subset policy is random:k:seed");
    p.mode = Mode::Random;
    p.k = parse_int(parts[0], "subset policy");
    p.seed = static_cast<std::uint64_t>(parse_int(parts[1], "subset policy"));
    if (p.k < 1) throw PreconditionError("random subset policy needs k >= 1");
  } else {
    throw PreconditionError("unknown subset policy '" + std::string(text) + "'");
  }
  return p;
}

std::string SubsetPolicy::describe() const {
  switch (mode) {
    case Mode::AllSubsets: return "all-subsets";
    case Mode::AllSingletons: return "all-singletons";
    case Mode::TopDegreePair: return "top-degree-pair";
    case Mode::IndependentSets: return "independent-sets";
    case Mode::Random: return "random:" + std::to_string(k) + ":" + std::to_string(seed);
  }
  return "?";
}

std::vector<std::vector<Vertex>> subsets_for(const Graph& g, const SubsetPolicy& policy, bool enumeration) {
  const int n = g.order();
  std::vector<std::vector<Vertex>> out;
  auto from_mask = [n](std::uint64_t mask) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v) {
      if (mask >> v & 1U) s.push_back(v);
    }
    return s;
  };
  const bool exhaustive = policy.mode == SubsetPolicy::Mode::AllSubsets || policy.mode == SubsetPolicy::Mode::IndependentSets;
  if (exhaustive && !enumeration && n > kMaxSubsetOrder) {
    throw PreconditionError("subset policy " + policy.describe() + " is capped at n <= " + std::to_string(kMaxSubsetOrder));
  }
  switch (policy.mode) {
    case SubsetPolicy::Mode::AllSubsets:
      for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) out.push_back(from_mask(mask));
      break;
    case SubsetPolicy::Mode::AllSingletons:
      for (Vertex v = 0; v < n; ++v) out.push_back({v});
      break;
    case SubsetPolicy::Mode::TopDegreePair:
      if (n >= 2) {
        const DegreeSequence ds = degree_sequence(g);
        out.push_back({ds.first, ds.second});
      }
      break;
    case SubsetPolicy::Mode::IndependentSets:
      for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        std::vector<Vertex> s = from_mask(mask);
        if (s.size() < 2) continue;
        bool independent = true;
        for (std::size_t i = 0; i < s.size() && independent; ++i) {
          for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (g.adjacent(s[i], s[j])) {
              independent = false;
              break;
            }
          }
        }
        if (independent) out.push_back(std::move(s));
      }
      break;
    case SubsetPolicy::Mode::Random: {
      if (n < 2) break;
      std::mt19937_64 rng(policy.seed ^ fnv1a(to_graph6(g)));
      for (int i = 0; i < policy.k; ++i) {
        std::vector<Vertex> s;
        while (s.empty() || static_cast<int>(s.size()) == n) {
          s.clear();
          const std::uint64_t bits = rng();
          for (Vertex v = 0; v < n; ++v) {
            if (bits >> (v % 64) & 1U) s.push_back(v);
          }
        }
        out.push_back(std::move(s));
      }
      break;
    }
  }
  return out;
}

namespace {

struct GraphResult {
  std::vector<std::vector<BoundCertificate>> per_bound;
  std::vector<CorpusError> errors;
};

GraphResult process_graph(const CorpusItem& item, const std::vector<const BoundSpec*>& specs,
                          const SubsetPolicy& policy, bool enumeration, const CheckContext& ctx) {
  GraphResult res;
  res.per_bound.resize(specs.size());
  std::optional<std::vector<std::vector<Vertex>>> subsets;
  std::string subset_error;
  for (std::size_t b = 0; b < specs.size(); ++b) {
    const BoundSpec& spec = *specs[b];
    BoundRequest req{item.graph, item.params, std::nullopt, std::nullopt, MatrixKind::SignlessLaplacian};
    auto run = [&](const BoundRequest& r, const std::string& label) {
      try {
        auto certs = spec.run(r, ctx);
        for (auto& c : certs) res.per_bound[b].push_back(std::move(c));
      } catch (const std::exception& e) {
        res.errors.push_back({0, to_graph6(item.graph) + label, spec.id + ": " + e.what()});
      }
    };
    if (spec.args != BoundArgs::Subset) {
      run(req, "");
      continue;
    }
    if (!subsets && subset_error.empty()) {
      try {
        subsets = subsets_for(item.graph, policy, enumeration);
      } catch (const std::exception& e) {
        subset_error = e.what();
      }
    }
    if (!subsets) {
      res.errors.push_back({0, to_graph6(item.graph), spec.id + ": " + subset_error});
      continue;
    }
    for (const auto& u : *subsets) {
      req.subset = u;
      std::string label = " U=";
      for (std::size_t i = 0; i < u.size(); ++i) label += (i ? "," : "") + std::to_string(u[i]);
      run(req, label);
    }
  }
  return res;
}

class Reducer {
 public:
  Reducer(const std::vector<const BoundSpec*>& specs, const SweepOptions& options) : options_(options) {
    for (const BoundSpec* s : specs) {
      BoundSummary b;
      b.id = s->id;
      b.theorem = s->theorem;
      for (Verdict v : {Verdict::Holds, Verdict::HoldsWithEquality, Verdict::Violated, Verdict::IndeterminateNumeric,
                        Verdict::NotApplicable}) {
        b.totals[v] = 0;
      }
      report_.bounds.push_back(std::move(b));
    }
  }

  void add(std::size_t index, GraphResult&& res) {
    ++report_.graphs;
    for (std::size_t b = 0; b < res.per_bound.size(); ++b) {
      BoundSummary& s = report_.bounds[b];
      for (BoundCertificate& c : res.per_bound[b]) {
        ++s.instances;
        ++report_.instances;
        ++s.totals[c.verdict];
        const std::string input = c.input.describe();
        if (c.verdict == Verdict::HoldsWithEquality) {
          ++s.equality_count;
          if (s.equality_witnesses.size() < options_.max_listed) s.equality_witnesses.push_back(input);
        }
        if (c.verdict == Verdict::Holds && c.slack > kEpsilon &&
            (!s.min_positive_slack || c.slack < s.min_positive_slack->slack)) {
          s.min_positive_slack = SlackWitness{c.slack, input, index};
        }
        if (is_failure(c)) {
          ++s.failure_count;
          if (s.failures.size() < options_.max_listed) s.failures.push_back(describe_failure(c, input));
        }
        if (c.finding) {
          ++s.remark_count;
          if (s.remarks.size() < options_.max_listed) s.remarks.push_back(input + ": " + c.note);
        }
        if (options_.collect_certificates) report_.certificates.push_back(std::move(c));
      }
    }
    for (CorpusError& e : res.errors) {
      ++report_.error_count;
      if (report_.errors.size() < options_.max_listed) report_.errors.push_back(std::move(e));
    }
  }

  void add_stream_errors(const std::vector<CorpusError>& errors) {
    for (const CorpusError& e : errors) {
      ++report_.error_count;
      if (report_.errors.size() < options_.max_listed) report_.errors.push_back(e);
    }
  }

  SweepReport& report() { return report_; }

 private:
  static std::string describe_failure(const BoundCertificate& c, const std::string& input) {
    std::string out = input + ": " + std::string(to_string(c.verdict)) + ", slack " + format_number(c.slack);
    if (!c.note.empty()) out += " (" + c.note + ")";
    return out;
  }

  const SweepOptions& options_;
  SweepReport report_;
};

std::vector<const BoundSpec*> resolve(const std::vector<std::string>& bounds) {
  if (bounds.empty()) throw PreconditionError("sweep needs at least one bound id");
  std::vector<const BoundSpec*> specs;
  for (const std::string& id : bounds) specs.push_back(&find_bound(id));
  return specs;
}

void finish(SweepReport& r, const CorpusSpec& corpus, const SubsetPolicy& subsets, const CorpusStream& stream) {
  r.corpus = corpus.describe();
  r.subsets = subsets.describe();
  r.raw_counts = stream.raw_counts();
  r.duplicates = stream.duplicates();
  r.collisions = stream.collisions();
  if (corpus.source == CorpusSpec::Source::Enumerate) {
    for (int n = corpus.n_min; n <= corpus.n_max; ++n) {
      const auto it = r.raw_counts.find(n);
      if (it == r.raw_counts.end() || it->second != (1ULL << pair_count(n))) r.exhaustive = false;
    }
  }
}

SweepReport sweep(const CorpusSpec& corpus, const std::vector<std::string>& bounds, const SubsetPolicy& subsets,
                  const SweepOptions& options, bool parallel) {
  const auto specs = resolve(bounds);
  const bool enumeration = corpus.source == CorpusSpec::Source::Enumerate;
  CorpusStream stream(corpus);
  Reducer reducer(specs, options);
  if (!parallel) {
    SpectrumCache cache;
    const CheckContext ctx{&cache};
    CorpusItem item;
    while (stream.next(item)) reducer.add(item.index, process_graph(item, specs, subsets, enumeration, ctx));
  } else {
    const int workers = std::max(1, options.workers);
    const std::size_t batch_size = std::max<std::size_t>(1, options.batch);
    std::vector<CorpusItem> batch;
    std::vector<GraphResult> results;
    bool more = true;
    while (more) {
      batch.clear();
      CorpusItem item;
      while (batch.size() < batch_size && (more = stream.next(item))) batch.push_back(std::move(item));
      results.assign(batch.size(), GraphResult{});
      const auto count = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel num_threads(workers)
      {
        SpectrumCache cache;
        const CheckContext ctx{&cache};
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
          results[i] = process_graph(batch[i], specs, subsets, enumeration, ctx);
        }
      }
      for (std::size_t i = 0; i < batch.size(); ++i) reducer.add(batch[i].index, std::move(results[i]));
    }
  }
  reducer.add_stream_errors(stream.errors());
  SweepReport report = std::move(reducer.report());
  finish(report, corpus, subsets, stream);
  return report;
}

}  // namespace

SweepReport run_sweep_serial(const CorpusSpec& corpus, const std::vector<std::string>& bounds,
                             const SubsetPolicy& subsets, const SweepOptions& options) {
  return sweep(corpus, bounds, subsets, options, false);
}

SweepReport run_sweep(const CorpusSpec& corpus, const std::vector<std::string>& bounds, const SubsetPolicy& subsets,
                      const SweepOptions& options) {
  return sweep(corpus, bounds, subsets, options, true);
}

std::uint64_t SweepReport::theorem_violations() const {
  std::uint64_t k = 0;
  for (const BoundSummary& b : bounds) k += b.theorem ? b.failure_count : 0;
  return k;
}

const BoundSummary& SweepReport::bound(std::string_view id) const {
  for (const BoundSummary& b : bounds) {
    if (b.id == id) return b;
  }
  throw PreconditionError("bound '" + std::string(id) + "' is not in the report");
}

std::string SweepReport::to_json() const {
  using nlohmann::ordered_json;
  auto number = [](double x) { return std::strtod(format_number(x).c_str(), nullptr); };
  ordered_json j;
  j["schema"] = 1;
  j["corpus"] = corpus;
  j["subsets"] = subsets;
  j["graphs"] = graphs;
  j["instances"] = instances;
  ordered_json raw = ordered_json::object();
  for (const auto& [n, count] : raw_counts) raw[std::to_string(n)] = count;
  j["raw_counts"] = raw;
  j["exhaustive"] = exhaustive;
  j["dedup"] = {{"duplicates", duplicates}, {"collisions", collisions}};
  ordered_json list = ordered_json::array();
  for (const BoundSummary& b : bounds) {
    ordered_json o;
    o["id"] = b.id;
    o["kind"] = b.theorem ? "theorem" : "finding";
    o["instances"] = b.instances;
    ordered_json totals;
    for (const auto& [v, count] : b.totals) totals[std::string(to_string(v))] = count;
    o["totals"] = totals;
    o["equality"] = {{"count", b.equality_count}, {"witnesses", b.equality_witnesses}};
    if (b.min_positive_slack) {
      o["min_positive_slack"] = {{"slack", number(b.min_positive_slack->slack)},
                                 {"input", b.min_positive_slack->input},
                                 {"index", b.min_positive_slack->index}};
    } else {
      o["min_positive_slack"] = nullptr;
    }
    o[b.theorem ? "violations" : "findings"] = {{"count", b.failure_count}, {"items", b.failures}};
    o["remarks"] = {{"count", b.remark_count}, {"items", b.remarks}};
    list.push_back(std::move(o));
  }
  j["bounds"] = list;
  ordered_json errs = ordered_json::array();
  for (const CorpusError& e : errors) errs.push_back({{"line", e.line}, {"input", e.input}, {"message", e.message}});
  j["errors"] = {{"count", error_count}, {"items", errs}};
  j["theorem_violations"] = theorem_violations();
  return j.dump(2) + "\n";
}

Extremes find_extremes(const SweepReport& report, std::string_view bound_id) {
  const BoundSummary& b = report.bound(bound_id);
  return {b.equality_witnesses, b.min_positive_slack};
}

}  // namespace qbounds
