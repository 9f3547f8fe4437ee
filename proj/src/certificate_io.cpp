#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qbounds/bounds.hpp"

namespace qbounds {

namespace {

using nlohmann::ordered_json;

// Rounds to 12 significant digits so the JSON text is stable across platforms.
ordered_json number(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

ordered_json to_json(const BoundCertificate& c) {
  ordered_json j;
  j["bound_id"] = c.bound_id;
  ordered_json in;
  in["graph6"] = c.input.graph6;
  if (c.input.params) in["params"] = c.input.params->to_string();
  if (c.input.subset) in["U"] = *c.input.subset;
  if (c.input.m) in["m"] = *c.input.m;
  if (!c.input.mode.empty()) in["mode"] = c.input.mode;
  j["input"] = in;
  const bool na = c.verdict == Verdict::NotApplicable;
  j["lhs"] = na ? ordered_json(nullptr) : number(c.lhs);
  j["rhs"] = na ? ordered_json(nullptr) : number(c.rhs);
  j["slack"] = na ? ordered_json(nullptr) : number(c.slack);
  j["strict"] = c.strict;
  j["exact_sign"] = c.exact_sign ? ordered_json(*c.exact_sign) : ordered_json(nullptr);
  j["verdict"] = std::string(to_string(c.verdict));
  j["witness"] = c.witness;
  j["claim_consistent"] = c.claim_consistent;
  j["finding"] = c.finding;
  j["note"] = c.note;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string certificate_json(const BoundCertificate& c) {
  ordered_json j = to_json(c);
  j = ordered_json{{"schema", 1}, {"certificate", j}};
  return j.dump(2) + "\n";
}

std::string certificates_json(const std::vector<BoundCertificate>& certs) {
  ordered_json list = ordered_json::array();
  for (const auto& c : certs) list.push_back(to_json(c));
  ordered_json j{{"schema", 1}, {"certificates", list}};
  return j.dump(2) + "\n";
}

std::string certificates_csv(const std::vector<BoundCertificate>& certs) {
  std::string out = "bound_id,input,lhs,rhs,slack,verdict,witness\n";
  for (const auto& c : certs) {
    const bool na = c.verdict == Verdict::NotApplicable;
    out += csv_field(c.bound_id) + ',' + csv_field(c.input.describe()) + ',' + (na ? "" : format_number(c.lhs)) + ',' +
           (na ? "" : format_number(c.rhs)) + ',' + (na ? "" : format_number(c.slack)) + ',' +
           std::string(to_string(c.verdict)) + ',' + csv_field(c.witness) + '\n';
  }
  return out;
}

std::string certificates_table(const std::vector<BoundCertificate>& certs) {
  std::ostringstream os;
  for (const auto& c : certs) {
    os << c.bound_id << "  [" << c.input.describe() << "]\n";
    os << "  verdict: " << to_string(c.verdict);
    if (!c.witness.empty()) os << " (" << c.witness << ")";
    os << '\n';
    if (c.verdict != Verdict::NotApplicable) {
      os << "  lhs " << format_number(c.lhs) << "  rhs " << format_number(c.rhs) << "  slack " << format_number(c.slack)
         << '\n';
    }
    if (!c.claim_consistent) os << "  claim inconsistent\n";
    if (c.finding) os << "  finding\n";
    if (!c.note.empty()) os << "  note: " << c.note << '\n';
  }
  return os.str();
}

}  // namespace qbounds
