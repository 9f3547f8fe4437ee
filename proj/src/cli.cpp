#include "qbounds/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbounds/bounds.hpp"
#include "qbounds/errors.hpp"
#include "qbounds/families.hpp"
#include "qbounds/search.hpp"

namespace qbounds {

namespace {

using nlohmann::ordered_json;

double rounded(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

// Eigenvalues within the solver tolerance of zero are shown as 0.
std::vector<double> displayed(const Spectrum& s) {
  std::vector<double> out = s.values;
  for (double& v : out) {
    if (std::abs(v) <= std::max(s.tol, 1e-12)) v = 0.0;
  }
  return out;
}

constexpr std::size_t kTableFailures = 10;

struct Options {
  std::string graph6;
  std::string family;
  std::string matrix = "Q";
  std::string format = "json";
  std::string out;
  std::string bound;
  std::string subset;
  int m = 0;
  std::string mode;
  std::string corpus;
  std::string bounds;
  std::string subsets = "all-singletons";
  int workers = 1;
  bool all_graphs = false;
  std::string dedup = "none";
  std::string emit_certificates;
};

struct Input {
  Graph graph;
  std::optional<FamilyParams> params;
};

Input read_input(const Options& o, std::istream& in) {
  if (!o.family.empty()) {
    if (!o.graph6.empty()) throw PreconditionError("give either a graph6 string or --family, not both");
    NamedGraph ng = make_named(o.family);
    return {std::move(ng.graph), ng.params};
  }
  if (o.graph6.empty()) throw PreconditionError("missing graph: pass graph6, '-' for stdin, or --family");
  if (o.graph6 == "-") {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("graph6: empty input", 0);
    return {parse_graph6(line), std::nullopt};
  }
  return {parse_graph6(o.graph6), std::nullopt};
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw PreconditionError("bad vertex '" + item + "' in --U");
    out.push_back(v);
  }
  if (out.empty()) throw PreconditionError("--U is empty");
  return out;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw PreconditionError("cannot write '" + o.out + "'");
  f << text;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_number(xs[i]);
  return s;
}

int cmd_spectrum(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o, in);
  const MatrixKind kind = parse_matrix_kind(o.matrix);
  const Spectrum s = spectrum_of(input.graph, kind);
  const std::vector<double> values = displayed(s);
  const DegreeSequence ds = input.graph.order() > 0 ? degree_sequence(input.graph) : DegreeSequence{};
  const double trace = build_matrix(input.graph, kind).trace();
  std::string text;
  if (o.format == "json") {
    ordered_json j;
    j["schema"] = 1;
    j["graph6"] = to_graph6(input.graph);
    j["matrix"] = std::string(to_string(kind));
    ordered_json json_values = ordered_json::array();
    for (double v : values) json_values.push_back(rounded(v));
    j["eigenvalues"] = json_values;
    j["trace"] = rounded(trace);
    j["degrees"] = ds.values;
    j["tolerance"] = rounded(s.tol);
    text = j.dump(2) + "\n";
  } else if (o.format == "csv") {
    text = "index,eigenvalue\n";
    for (std::size_t i = 0; i < values.size(); ++i) text += std::to_string(i + 1) + "," + format_number(values[i]) + "\n";
  } else {
    text = std::string(to_string(kind)) + "-spectrum of " + to_graph6(input.graph) + ": " + join_numbers(values) + "\n";
    text += "trace: " + format_number(trace) + "\n";
    std::vector<double> d(ds.values.begin(), ds.values.end());
    text += "degrees: " + join_numbers(d) + "\n";
  }
  emit(o, text, out);
  return kExitOk;
}

std::string render(const std::vector<BoundCertificate>& certs, const std::string& format) {
  if (format == "csv") return certificates_csv(certs);
  if (format == "table") return certificates_table(certs);
  if (certs.size() == 1) return certificate_json(certs.front());
  return certificates_json(certs);
}

int exit_for(const std::vector<BoundCertificate>& certs) {
  bool any_applicable = false;
  bool indeterminate = false;
  for (const auto& c : certs) {
    if (c.verdict == Verdict::Violated) return kExitViolated;
    if (c.verdict == Verdict::IndeterminateNumeric) indeterminate = true;
    if (c.verdict != Verdict::NotApplicable) any_applicable = true;
  }
  if (indeterminate) return kExitIndeterminate;
  return any_applicable ? kExitOk : kExitNotApplicable;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  Input input = read_input(o, in);
  std::string id = o.bound;
  if (!o.mode.empty()) id += ":" + o.mode;
  const BoundSpec& spec = find_bound(id);
  BoundRequest req{std::move(input.graph), input.params, std::nullopt, std::nullopt, parse_matrix_kind(o.matrix)};
  if (!o.subset.empty()) req.subset = parse_vertex_list(o.subset);
  if (o.m != 0) req.m = o.m;
  if (spec.args == BoundArgs::Subset && !req.subset) throw PreconditionError("bound '" + id + "' needs --U");
  const std::vector<BoundCertificate> certs = spec.run(req, CheckContext{});
  emit(o, render(certs, o.format), out);
  return exit_for(certs);
}

std::string matrix_text(const RationalMatrix& m) {
  std::string s;
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) s += (j ? " " : "  ") + to_string(m(i, j));
    s += "\n";
  }
  return s;
}

ordered_json matrix_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.order(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.order(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

int cmd_family(const Options& o, std::ostream& out) {
  if (o.family.empty()) throw PreconditionError("family needs --family");
  const NamedGraph ng = make_named(o.family);
  const Graph& g = ng.graph;
  const Spectrum q = spectrum_of(g, MatrixKind::SignlessLaplacian);
  ordered_json j;
  j["schema"] = 1;
  j["family"] = o.family;
  j["graph6"] = to_graph6(g);
  j["n"] = g.order();
  j["m"] = g.size();
  ordered_json q_values = ordered_json::array();
  for (double v : displayed(q)) q_values.push_back(rounded(v));
  j["q_spectrum"] = q_values;
  std::string table = o.family + ": " + to_graph6(g) + " (n=" + std::to_string(g.order()) + ", m=" +
                      std::to_string(g.size()) + ")\nQ-spectrum: " + join_numbers(displayed(q)) + "\n";
  if (ng.params) {
    const FamilyParams& fp = *ng.params;
    const FamilyRegime regime = regime_of(fp);
    j["params"] = fp.to_string();
    j["regime"] = std::string(to_string(regime));
    table += "params: " + fp.to_string() + ", regime " + std::string(to_string(regime)) + "\n";
    if (regime != FamilyRegime::Unsupported) {
      const RationalMatrix mq = family_quotient(fp);
      const RationalPoly closed = family_char_poly(fp);
      const RationalPoly exact = char_poly_exact(mq);
      j["quotient"] = matrix_json(mq);
      j["block_sizes"] = family_block_sizes(fp);
      j["closed_form_char_poly"] = closed.to_string();
      j["exact_char_poly"] = exact.to_string();
      j["closed_form_matches_exact"] = closed == exact;
      ordered_json extra = ordered_json::array();
      for (double v : family_extra_eigenvalues(fp)) extra.push_back(v);
      j["extra_eigenvalues"] = extra;
      table += "quotient M:\n" + matrix_text(mq);
      table += "closed-form f: " + closed.to_string() + "\n";
      table += "det(xI-M): " + exact.to_string() + (closed == exact ? "  (matches)\n" : "  (differs)\n");
    }
  }
  emit(o, o.format == "table" ? table : j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_extract_h(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o, in);
  const ExtractedH ex = extract_H(input.graph);
  const bool member = ex.h.order() == input.graph.order() && ex.h.size() == input.graph.size();
  ordered_json j;
  j["schema"] = 1;
  j["graph6"] = to_graph6(input.graph);
  j["u"] = ex.u;
  j["v"] = ex.v;
  j["params"] = ex.params.to_string();
  j["regime"] = std::string(to_string(regime_of(ex.params)));
  j["family_graph6"] = to_graph6(ex.h);
  j["vertex_map"] = ex.vertex_map;
  j["graph_is_member"] = member;
  std::string table = "u=" + std::to_string(ex.u) + " v=" + std::to_string(ex.v) + " " + ex.params.to_string() +
                      " regime " + std::string(to_string(regime_of(ex.params))) + (member ? "" : " (subgraph)") + "\n";
  emit(o, o.format == "table" ? table : j.dump(2) + "\n", out);
  return kExitOk;
}

std::string sweep_table(const SweepReport& r) {
  std::ostringstream os;
  os << "corpus " << r.corpus << ", subsets " << r.subsets << ": " << r.graphs << " graphs, " << r.instances
     << " instances\n";
  for (const BoundSummary& b : r.bounds) {
    os << b.id << (b.theorem ? "" : " (finding)") << ":";
    for (const auto& [v, count] : b.totals) {
      if (count) os << " " << to_string(v) << "=" << count;
    }
    os << "\n  " << (b.theorem ? "violations " : "findings ") << b.failure_count << ", equality " << b.equality_count;
    if (b.min_positive_slack) os << ", min positive slack " << format_number(b.min_positive_slack->slack) << " at " << b.min_positive_slack->input;
    os << "\n";
    for (std::size_t i = 0; i < std::min(b.failures.size(), kTableFailures); ++i) os << "  ! " << b.failures[i] << "\n";
    if (b.failure_count > kTableFailures) os << "  ! ... " << b.failure_count - kTableFailures << " more\n";
  }
  if (r.error_count) os << "errors: " << r.error_count << "\n";
  return os.str();
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.corpus.empty()) throw PreconditionError("sweep needs --corpus");
  if (o.bounds.empty()) throw PreconditionError("sweep needs --bounds");
  CorpusSpec corpus = CorpusSpec::parse(o.corpus);
  corpus.connected_only = !o.all_graphs;
  if (o.dedup == "spectrum") {
    corpus.dedup = CorpusSpec::Dedup::BySpectrum;
  } else if (o.dedup != "none") {
    throw PreconditionError("--dedup must be none or spectrum");
  }
  std::vector<std::string> ids;
  std::stringstream ss(o.bounds);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (!id.empty()) ids.push_back(id);
  }
  for (const std::string& b : ids) find_bound(b);
  const SubsetPolicy policy = SubsetPolicy::parse(o.subsets);
  SweepOptions opts;
  opts.workers = o.workers;
  opts.collect_certificates = !o.emit_certificates.empty();
  const SweepReport report = run_sweep(corpus, ids, policy, opts);
  emit(o, o.format == "table" ? sweep_table(report) : report.to_json(), out);
  if (!o.emit_certificates.empty()) {
    std::ofstream f(o.emit_certificates);
    if (!f) throw PreconditionError("cannot write '" + o.emit_certificates + "'");
    f << certificates_csv(report.certificates);
  }
  return report.theorem_violations() == 0 ? kExitOk : kExitViolated;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool flag_present(const std::vector<std::string>& args, const CLI::Option* opt) {
  for (const std::string& a : args) {
    const std::string name = a.substr(0, a.find('='));
    if (name.size() > 1 && name[0] == '-' && opt->check_name(name)) return true;
  }
  return false;
}

// Appends QBOUNDS_OPTS flags the subcommand knows and args leave unset.
std::vector<std::string> with_env_defaults(std::vector<std::string> args, const std::string& env_opts, CLI::App& app) {
  if (args.empty() || env_opts.empty()) return args;
  CLI::App* sub = app.get_subcommand_no_throw(args.front());
  if (!sub) return args;
  const std::vector<std::string> toks = tokenize(env_opts);
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].size() < 2 || toks[i][0] != '-') continue;
    const auto eq = toks[i].find('=');
    const std::string name = toks[i].substr(0, eq);
    const CLI::Option* opt = sub->get_option_no_throw(name);
    const bool takes_value = opt && opt->get_items_expected_min() > 0;
    std::vector<std::string> chunk{toks[i]};
    if (takes_value && eq == std::string::npos && i + 1 < toks.size()) chunk.push_back(toks[++i]);
    if (!opt || flag_present(args, opt)) continue;
    extra.insert(extra.end(), chunk.begin(), chunk.end());
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, const std::string& env_opts, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Signless Laplacian eigenvalue bounds: spectra, certificates and corpus sweeps", "qbounds"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "csv", "table"};

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("graph6", o.graph6, "graph6 string, or '-' to read one line from stdin");
    sub->add_option("--family", o.family, "family literal such as star:5, H:1,2,1, G:0,3,2, snplus:6");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", o.out, "write output to this path instead of stdout");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of A, L or Q, descending");
  add_graph(spectrum);
  spectrum->add_option("--matrix", o.matrix, "A, L or Q");
  add_output(spectrum);

  CLI::App* check = app.add_subcommand("check", "evaluate one bound on one graph");
  add_graph(check);
  check->add_option("--bound", o.bound, "bound id")->required();
  check->add_option("--U", o.subset, "comma-separated vertex subset (U, or I for independent_set_corollary)");
  check->add_option("--m", o.m, "number of eigenvalues summed");
  check->add_option("--mode", o.mode, "safe | as-written (t1_sandwich), base | refined (gm_qanalog)");
  check->add_option("--matrix", o.matrix, "L or Q for schur_sum");
  add_output(check);

  CLI::App* family = app.add_subcommand("family", "build a family graph and show its quotient data");
  family->add_option("--family", o.family, "family literal")->required();
  add_output(family);

  CLI::App* sweep = app.add_subcommand("sweep", "run bounds over a corpus");
  sweep->add_option("--corpus", o.corpus, "enumerate:a..b | file:path | family:lit;lit | sample:n:count:seed")->required();
  sweep->add_option("--bounds", o.bounds, "comma-separated bound ids")->required();
  sweep->add_option("--subsets", o.subsets,
                    "all-subsets | all-singletons | top-degree-pair | independent-sets | random:k:seed");
  sweep->add_option("--workers", o.workers, "OpenMP worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--all-graphs", o.all_graphs, "keep disconnected graphs");
  sweep->add_option("--dedup", o.dedup, "none | spectrum");
  sweep->add_option("--emit-certificates", o.emit_certificates, "write every certificate as CSV to this path");
  add_output(sweep);

  CLI::App* extract = app.add_subcommand("extract-h", "locate u, v and the H/G(p,r,s) parameters of a graph");
  add_graph(extract);
  add_output(extract);

  std::vector<std::string> argv = with_env_defaults(args, env_opts, app);
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, in, out);
    if (check->parsed()) return cmd_check(o, in, out);
    if (family->parsed()) return cmd_family(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (extract->parsed()) return cmd_extract_h(o, in, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qbounds
