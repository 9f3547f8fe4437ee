#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "qbounds/bounds.hpp"
#include "qbounds/errors.hpp"
#include "qbounds/families.hpp"

using namespace qbounds;

namespace {

const BoundCertificate& by_id(const std::vector<BoundCertificate>& certs, const std::string& id) {
  for (const auto& c : certs) {
    if (c.bound_id == id) return c;
  }
  FAIL("missing certificate " << id);
  throw std::logic_error("unreachable");
}

void check_sides(const BoundCertificate& c, double lhs, double rhs) {
  CHECK(c.lhs == doctest::Approx(lhs).epsilon(1e-9));
  CHECK(c.rhs == doctest::Approx(rhs).epsilon(1e-9));
  CHECK(c.slack == doctest::Approx(c.lhs - c.rhs));
}

}  // namespace

TEST_CASE("Schur sums") {
  const BoundCertificate k3 = schur_sum(make_complete(3), MatrixKind::SignlessLaplacian, 1);
  check_sides(k3, 4, 2);
  CHECK(k3.verdict == Verdict::Holds);
  for (const Graph& g : {make_cycle(5), make_star_plus_edge(6), make_complete_bipartite(2, 4)}) {
    const BoundCertificate full = schur_sum(g, MatrixKind::SignlessLaplacian, g.order());
    CHECK(full.verdict == Verdict::HoldsWithEquality);
    CHECK(full.claim_consistent);
  }
  const BoundCertificate s4 = schur_sum(make_star(4), MatrixKind::Laplacian, 1);
  check_sides(s4, 4, 3);
  CHECK(s4.verdict == Verdict::Holds);
  CHECK(schur_sum(make_star(4), MatrixKind::Adjacency, 1).verdict == Verdict::NotApplicable);
}

TEST_CASE("Grone sums") {
  const BoundCertificate s4 = grone_sum_L(make_star(4), 1);
  check_sides(s4, 4, 4);
  CHECK(s4.verdict == Verdict::HoldsWithEquality);
  const BoundCertificate k3 = grone_sum_L(make_complete(3), 2);
  check_sides(k3, 6, 5);
  const BoundCertificate p4 = grone_sum_L(make_path(4), 1);
  check_sides(p4, 2 + std::sqrt(2.0), 3);
  CHECK(grone_sum_L(Graph(3, {{0, 1}}), 1).verdict == Verdict::NotApplicable);
}

TEST_CASE("single eigenvalue lower bounds") {
  const BoundCertificate s5 = q1_lower(make_star(5));
  check_sides(s5, 5, 5);
  CHECK(s5.verdict == Verdict::HoldsWithEquality);
  CHECK(s5.witness == "star");
  CHECK(s5.claim_consistent);
  check_sides(q1_lower(make_complete(4)), 6, 4);
  check_sides(q1_lower(make_cycle(4)), 4, 3);
  CHECK(q1_lower(make_complete(3)).verdict == Verdict::NotApplicable);

  check_sides(q2_lower(make_star(4)), 1, 0);
  const BoundCertificate k3 = q2_lower(make_complete(3));
  check_sides(k3, 1, 1);
  CHECK(k3.verdict == Verdict::HoldsWithEquality);
  check_sides(q2_lower(make_cycle(4)), 2, 1);
}

TEST_CASE("sum of the two largest Q eigenvalues") {
  const BoundCertificate k3 = main_q1q2(make_complete(3));
  check_sides(k3, 5, 5);
  CHECK(k3.verdict == Verdict::HoldsWithEquality);
  CHECK(k3.witness == "K3");
  CHECK(k3.claim_consistent);
  for (int r = 1; r <= 6; ++r) {
    const BoundCertificate s = main_q1q2(make_star(r + 2));
    check_sides(s, r + 3, r + 3);
    CHECK(s.witness == "star");
  }
  const BoundCertificate k23 = main_q1q2(make_complete_bipartite(2, 3));
  check_sides(k23, 8, 7);
  CHECK(k23.verdict == Verdict::Holds);
  CHECK(main_q1q2(make_path(2)).verdict == Verdict::NotApplicable);
  CHECK(main_q1q2(Graph(4, {{0, 1}, {1, 2}})).verdict == Verdict::NotApplicable);
}

TEST_CASE("sum of the two largest L eigenvalues") {
  const BoundCertificate s4 = l_sum2(make_star(4));
  check_sides(s4, 5, 5);
  CHECK(s4.witness == "star");
  const BoundCertificate k3 = l_sum2(make_complete(3));
  check_sides(k3, 6, 5);
  CHECK(k3.verdict == Verdict::Holds);
  const double c5 = 2 - 2 * std::cos(4 * M_PI / 5);
  check_sides(l_sum2(make_cycle(5)), 2 * c5, 5);
}

TEST_CASE("family claims") {
  const auto p4 = family_props({1, 1, 0, false});
  const BoundCertificate& pr5 = by_id(p4, "pr5");
  check_sides(pr5, 2, 2);
  CHECK(pr5.verdict == Verdict::HoldsWithEquality);
  CHECK(pr5.witness == "P4");
  CHECK(pr5.claim_consistent);

  const BoundCertificate& pr4 = by_id(family_props({2, 2, 1, false}), "pr4");
  CHECK(pr4.rhs == 3);
  CHECK(pr4.verdict == Verdict::Holds);

  const auto g122 = family_props({1, 2, 2, true});
  const BoundCertificate& q1 = by_id(g122, "pr2(ii).q1");
  const BoundCertificate& q2 = by_id(g122, "pr2(ii).q2");
  CHECK(q1.rhs == doctest::Approx(4 + 1.5));
  CHECK(q1.verdict == Verdict::Holds);
  CHECK(q2.rhs == doctest::Approx(4 - 0.5));
  CHECK(q2.verdict == Verdict::Holds);

  const BoundCertificate& pr3 = by_id(family_props({0, 3, 2, true}), "pr3");
  CHECK(pr3.verdict == Verdict::Holds);
}

TEST_CASE("star plus one edge refutes the degree bound") {
  const BoundCertificate n5 = snplus_refutation(5, 3);
  CHECK(n5.lhs == 9);
  CHECK(n5.verdict == Verdict::Holds);
  CHECK(n5.witness == "counterexample-confirmed");
  CHECK(snplus_refutation(10, 3).verdict == Verdict::Holds);
  CHECK(snplus_refutation(5, 2).verdict == Verdict::NotApplicable);
  CHECK(snplus_refutation(make_star(6), 3).verdict == Verdict::NotApplicable);
  CHECK(is_star_plus_edge(make_star_plus_edge(7)));
}

TEST_CASE("sandwich bound") {
  const BoundCertificate k3 = t1_sandwich(make_complete(3), {0}, SandwichMode::Safe);
  CHECK(k3.verdict == Verdict::HoldsWithEquality);
  CHECK(k3.witness == "upper");
  check_sides(k3, 5, 5);

  const BoundCertificate s4 = t1_sandwich(make_star(4), {0}, SandwichMode::Safe);
  CHECK(s4.verdict == Verdict::Holds);
  CHECK(s4.note.find("upper slack 1") != std::string::npos);
  CHECK(s4.note.find("lower slack 3") != std::string::npos);

  const BoundCertificate c7 = t1_sandwich(make_cycle(7), {0}, SandwichMode::Safe);
  CHECK(c7.verdict == Verdict::Holds);
  CHECK(t1_sandwich(Graph(3, {{0, 1}}), {0}, SandwichMode::Safe).verdict == Verdict::NotApplicable);
  CHECK(t1_sandwich(make_complete(3), {0, 1, 2}, SandwichMode::Safe).verdict == Verdict::NotApplicable);
  CHECK_THROWS_AS(t1_sandwich(make_complete(4), {0, 0}, SandwichMode::Safe), PreconditionError);
}

TEST_CASE("sandwich equality conditions") {
  // Upper side tight at 8, but q_2 = 2 while q'_1 + b' = 4 + 1.
  const BoundCertificate k4 = t1_equality_conditions(make_complete(4), {0});
  check_sides(k4, 8, 8);
  CHECK(k4.witness.empty());
  CHECK_FALSE(k4.claim_consistent);
  const BoundCertificate p4 = t1_equality_conditions(make_path(4), {0});
  CHECK(p4.witness.empty());
  CHECK(p4.verdict != Verdict::HoldsWithEquality);
  CHECK(p4.claim_consistent);
  // Every vertex of U sees all of U-bar, yet the upper side is not tight.
  const BoundCertificate k33 = t1_equality_conditions(make_complete_bipartite(3, 3), {0, 1, 2});
  CHECK(k33.witness == "almost-equitable");
  CHECK_FALSE(k33.claim_consistent);
}

TEST_CASE("strict sandwich") {
  const BoundCertificate k3 = strict_sandwich(make_complete(3), {0});
  CHECK(k3.slack == doctest::Approx(0).epsilon(1e-12));
  CHECK(k3.verdict == Verdict::HoldsWithEquality);
  CHECK_FALSE(k3.claim_consistent);
  REQUIRE(k3.exact_sign);
  CHECK(*k3.exact_sign == 0);

  // E[U-bar] has two edges in C4 minus a vertex, so the middle term is 2 + 8/3.
  const BoundCertificate c4 = strict_sandwich(make_cycle(4), {0});
  CHECK(c4.verdict == Verdict::Violated);
  CHECK(c4.note.find("upper") != std::string::npos);
}

TEST_CASE("regular corollary") {
  const BoundCertificate k4 = regular_corollary(make_complete(4), {0, 1, 2});
  check_sides(k4, 0, 0);
  CHECK(k4.verdict == Verdict::HoldsWithEquality);
  const BoundCertificate c5 = regular_corollary(make_cycle(5), {0});
  check_sides(c5, 2 + 2 * std::cos(2 * M_PI / 5), 1.5);
  const BoundCertificate k33 = regular_corollary(make_complete_bipartite(3, 3), {0, 1});
  CHECK(k33.verdict == Verdict::Holds);
  CHECK(k33.lhs == doctest::Approx(3));
  CHECK(regular_corollary(make_path(4), {0}).verdict == Verdict::NotApplicable);
}

TEST_CASE("independent set corollary") {
  const BoundCertificate s5 = independent_set_corollary(make_star(5), {1, 2, 3, 4});
  check_sides(s5, 4, 4.0 / 3.0 * 2);
  const BoundCertificate c4 = independent_set_corollary(make_cycle(4), {0, 2});
  check_sides(c4, 4, 0);
  const BoundCertificate k33 = independent_set_corollary(make_complete_bipartite(3, 3), {0, 1, 2});
  check_sides(k33, 9, 1.5 * 3);
  CHECK_THROWS_AS(independent_set_corollary(make_path(3), {0, 1}), PreconditionError);
}

TEST_CASE("Q analogue of the Grone-Merris bound") {
  for (int n = 3; n <= 8; ++n) {
    const BoundCertificate s = gm_qanalog(make_star(n), {0}, false);
    check_sides(s, n + 1, n);
  }
  const BoundCertificate k4 = gm_qanalog(make_complete(4), {0, 1}, true);
  check_sides(k4, 10, 9);
  const BoundCertificate p4 = gm_qanalog(make_path(4), {0, 1}, true);
  // (2 + sqrt 2) + 2 + (2 - sqrt 2): the refined bound is tight here.
  check_sides(p4, 6, 6);
  CHECK(p4.verdict == Verdict::HoldsWithEquality);
  const BoundCertificate fallback = gm_qanalog(make_star(5), {0, 1}, true);
  CHECK(fallback.verdict == Verdict::Holds);
  CHECK_FALSE(fallback.note.empty());
}

TEST_CASE("verdicts follow the guard band") {
  BoundCertificate c;
  c.verdict = Verdict::Holds;
  c.lhs = 1.0;
  c.rhs = 1.0 + 0.5 * kEpsilon;
  c.slack = c.lhs - c.rhs;
  CHECK(recompute_verdict(c) == Verdict::HoldsWithEquality);
  c.strict = true;
  CHECK(recompute_verdict(c) == Verdict::IndeterminateNumeric);
  c.exact_sign = 1;
  CHECK(recompute_verdict(c) == Verdict::Holds);
  c.rhs = 2.0;
  c.slack = -1.0;
  c.exact_sign.reset();
  CHECK(recompute_verdict(c) == Verdict::Violated);
  for (Verdict v : {Verdict::Holds, Verdict::HoldsWithEquality, Verdict::Violated, Verdict::IndeterminateNumeric,
                    Verdict::NotApplicable}) {
    CHECK(parse_verdict(to_string(v)) == v);
  }
}

TEST_CASE("stored verdicts are reproducible from the stored numbers") {
  for (const BoundSpec& spec : bound_registry()) {
    BoundRequest req;
    req.graph = make_star_plus_edge(6);
    req.subset = VertexSet{0, 1};
    req.m = 3;
    if (spec.args == BoundArgs::Family) continue;
    for (const BoundCertificate& c : spec.run(req, CheckContext{})) {
      CHECK(recompute_verdict(c) == c.verdict);
      if (c.verdict != Verdict::NotApplicable) CHECK(c.slack == c.lhs - c.rhs);
    }
  }
}

TEST_CASE("certificate serialisation") {
  const BoundCertificate c = main_q1q2(make_complete(3));
  const nlohmann::json j = nlohmann::json::parse(certificate_json(c));
  CHECK(j["schema"] == 1);
  CHECK(j["certificate"]["bound_id"] == "main_q1q2");
  CHECK(j["certificate"]["verdict"] == "holds-with-equality");
  CHECK(j["certificate"]["witness"] == "K3");

  const BoundCertificate na = main_q1q2(make_path(2));
  const nlohmann::json jn = nlohmann::json::parse(certificate_json(na));
  CHECK(jn["certificate"]["lhs"].is_null());

  const std::string csv = certificates_csv({c, na});
  CHECK(csv.rfind("bound_id,input,lhs,rhs,slack,verdict,witness\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK_FALSE(certificates_table({c}).empty());
}

TEST_CASE("registry lookup") {
  CHECK(find_bound("main_q1q2").theorem);
  CHECK_FALSE(find_bound("t1_sandwich:as-written").theorem);
  CHECK_THROWS(find_bound("nope"));
}
