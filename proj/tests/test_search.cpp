#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>

#include "oracles.hpp"
#include "qbounds/errors.hpp"
#include "qbounds/families.hpp"
#include "qbounds/search.hpp"

using namespace qbounds;

TEST_CASE("connected labelled counts match the recurrence") {
  CHECK(enumerate_graphs(CorpusSpec::parse("enumerate:3..3")).size() == 4);
  CHECK(enumerate_graphs(CorpusSpec::parse("enumerate:2..2")).size() == 1);
  for (int n = 1; n <= 6; ++n) {
    const std::string text = "enumerate:" + std::to_string(n) + ".." + std::to_string(n);
    CHECK(enumerate_graphs(CorpusSpec::parse(text)).size() == oracle::connected_labelled(n));
  }
}

TEST_CASE("raw counts are exhaustive") {
  CorpusStream stream(CorpusSpec::parse("enumerate:4..5"));
  CorpusItem item;
  std::size_t seen = 0;
  while (stream.next(item)) CHECK(item.index == seen++);
  CHECK(stream.raw_counts().at(4) == 64);
  CHECK(stream.raw_counts().at(5) == 1024);
}

TEST_CASE("spectral deduplication on four vertices") {
  CorpusSpec spec = CorpusSpec::parse("enumerate:4..4");
  spec.dedup = CorpusSpec::Dedup::BySpectrum;
  CorpusStream stream(spec);
  CorpusItem item;
  std::size_t kept = 0;
  while (stream.next(item)) ++kept;
  CHECK(kept == 6);
  CHECK(stream.collisions() == 0);
  CHECK(stream.duplicates() == oracle::connected_labelled(4) - 6);
}

TEST_CASE("graph masks follow graph6 bit order") {
  CHECK(graph_from_mask(3, 0b111) == make_complete(3));
  CHECK(graph_from_mask(3, 0b001) == Graph(3, {{0, 1}}));
  CHECK(graph_from_mask(3, 0b010) == Graph(3, {{0, 2}}));
  CHECK(graph_from_mask(3, 0b100) == Graph(3, {{1, 2}}));
}

TEST_CASE("corpus specs parse") {
  CHECK_THROWS_AS(CorpusSpec::parse("enumerate:3..12"), PreconditionError);
  CHECK_THROWS_AS(CorpusSpec::parse("bogus"), PreconditionError);
  const CorpusSpec fam = CorpusSpec::parse("family:snplus:5..7;H:1..2,1,0");
  const std::vector<Graph> graphs = enumerate_graphs(fam);
  CHECK(graphs.size() == 5);
  const CorpusSpec sample = CorpusSpec::parse("sample:7:20:3");
  const std::vector<Graph> a = enumerate_graphs(sample);
  CHECK(a.size() <= 20);
  CorpusSpec all = sample;
  all.connected_only = false;
  CHECK(enumerate_graphs(all).size() == 20);
  CHECK(a == enumerate_graphs(sample));
  for (const Graph& g : a) CHECK(is_connected(g));
}

TEST_CASE("file corpora quarantine bad lines") {
  const std::string path = "search_test_corpus.g6";
  {
    std::ofstream f(path);
    f << "Bw\n\n>>graph6<<Cs\nC\x01\nB?\n";
  }
  CorpusSpec spec = CorpusSpec::parse("file:" + path);
  spec.connected_only = false;
  CorpusStream stream(spec);
  CorpusItem item;
  std::vector<Graph> got;
  while (stream.next(item)) got.push_back(item.graph);
  CHECK(got.size() == 3);
  REQUIRE(stream.errors().size() == 1);
  CHECK(stream.errors()[0].line == 4);
  std::remove(path.c_str());
}

TEST_CASE("subset policies") {
  const Graph g = make_cycle(5);
  CHECK(subsets_for(g, SubsetPolicy::parse("all-subsets"), true).size() == 30);
  CHECK(subsets_for(g, SubsetPolicy::parse("all-singletons"), true).size() == 5);
  CHECK(subsets_for(make_star(5), SubsetPolicy::parse("top-degree-pair"), true) ==
        std::vector<VertexSet>{{0, 1}});
  for (const VertexSet& u : subsets_for(g, SubsetPolicy::parse("independent-sets"), true)) {
    for (Vertex a : u) {
      for (Vertex b : u) CHECK_FALSE(g.adjacent(a, b));
    }
  }
  const SubsetPolicy random = SubsetPolicy::parse("random:4:9");
  CHECK(subsets_for(g, random, false) == subsets_for(g, random, false));
  CHECK(subsets_for(g, random, false).size() == 4);
  CHECK_THROWS_AS(subsets_for(make_cycle(13), SubsetPolicy::parse("all-subsets"), false), PreconditionError);
}

TEST_CASE("sweep over small graphs") {
  const SweepReport r = run_sweep(CorpusSpec::parse("enumerate:3..6"), {"main_q1q2", "l_sum2"},
                                  SubsetPolicy::parse("all-singletons"));
  CHECK(r.exhaustive);
  CHECK(r.theorem_violations() == 0);
  const BoundSummary& main = r.bound("main_q1q2");
  for (const std::string& w : main.equality_witnesses) {
    const Graph g = parse_graph6(w.substr(0, w.find(' ')));
    CHECK((is_triangle(g) || is_star(g)));
  }
  const Extremes l = find_extremes(r, "l_sum2");
  for (const std::string& w : l.equality_witnesses) CHECK(is_star(parse_graph6(w.substr(0, w.find(' ')))));
  REQUIRE(l.min_positive_slack);
  CHECK(l.min_positive_slack->slack > kEpsilon);
}

TEST_CASE("serial and parallel sweeps agree") {
  const CorpusSpec corpus = CorpusSpec::parse("enumerate:3..5");
  const std::vector<std::string> bounds{"t1_sandwich", "gm_qanalog", "strict_sandwich"};
  const SubsetPolicy subsets = SubsetPolicy::parse("all-subsets");
  SweepOptions opt;
  opt.batch = 7;
  const std::string serial = run_sweep_serial(corpus, bounds, subsets, opt).to_json();
  opt.workers = 4;
  CHECK(run_sweep(corpus, bounds, subsets, opt).to_json() == serial);
  const nlohmann::json j = nlohmann::json::parse(serial);
  CHECK(j["schema"] == 1);
  CHECK(j["theorem_violations"] == 0);
}
