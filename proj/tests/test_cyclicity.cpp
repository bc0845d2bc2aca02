#include <random>
#include <set>

#include "doctest.h"
#include "avcyc/cyclicity.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avcyc;

namespace {

IntMatrix mat(std::size_t n, std::initializer_list<long> v) {
  IntMatrix m(n, n);
  auto it = v.begin();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = *it++;
  return m;
}

WeilContext ctx_of(long p, unsigned r, unsigned g, std::initializer_list<long> high_first) {
  return make_context(p, r, g, std::vector<Int>(high_first.begin(), high_first.end()));
}

IntMatrix one_minus(const IntMatrix& m) { return IntMatrix::identity(m.rows()) - m; }

std::vector<Int> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// tau via the (n-1)-th determinantal divisor
Int oracle_tau(const IntMatrix& m) {
  if (m.rows() == 1) return 1;
  return oracle::determinantal_divisor(m, m.rows() - 1);
}

}  // namespace

TEST_CASE("membership examples") {
  auto c2 = ctx_of(2, 1, 1, {1, 1, 2});
  IntMatrix m = mat(2, {0, -2, 1, -1});
  CHECK(membership(m, c2, 1));
  CHECK_FALSE(membership(m, c2, 2));

  auto c5 = ctx_of(5, 1, 1, {1, -2, 5});
  IntMatrix mp = mat(2, {1, -2, 2, 1});
  CHECK(oracle_tau(one_minus(mp)) == 2);
  CHECK(membership(mp, c5, 2));
  CHECK(membership(mp, c5, 1));

  CHECK_THROWS_AS(membership(mp, c2, 1), Error);
  CHECK_THROWS_AS(membership(m, c2, 3), Error);
  try {
    membership(mat(2, {0, -3, 1, -1}), c2, 1);
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CharpolyMismatch);
  }
}

TEST_CASE("q_stability_check examples") {
  auto c2 = ctx_of(2, 1, 1, {1, 1, 2});
  CHECK(q_stability_check(companion_matrix(c2.f), c2));
  auto c5 = ctx_of(5, 1, 1, {1, -2, 5});
  CHECK(q_stability_check(companion_matrix(c5.f), c5));

  // For g = 2 the companion matrix has det q^2 but tau = 1.
  auto c = ctx_of(2, 1, 2, {1, 1, 1, 2, 4});
  REQUIRE(c.classifiable());
  IntMatrix comp = companion_matrix(c.f);
  CHECK(oracle::laplace_det(comp) == 4);
  CHECK(oracle_tau(comp) == 1);
  auto routes = q_stability_routes(make_field(c), comp, c);
  CHECK_FALSE(routes.inverse_integral);
  CHECK_FALSE(routes.tau_divisible);
  CHECK_FALSE(routes.ideal_stable);
  CHECK_FALSE(membership(comp, c, 1));
}

TEST_CASE("group_structure_oracle examples") {
  auto c2 = ctx_of(2, 1, 1, {1, 1, 2});
  auto g1 = group_structure_oracle(companion_matrix(c2.f), c2);
  CHECK(g1.invariant_factors == ints({1, 4}));
  CHECK(g1.cyclic);
  CHECK(group_descriptor(g1.group) == "Z/4");

  auto c5 = ctx_of(5, 1, 1, {1, -2, 5});
  auto g2 = group_structure_oracle(mat(2, {1, -2, 2, 1}), c5);
  CHECK(g2.invariant_factors == ints({2, 2}));
  CHECK_FALSE(g2.cyclic);
  CHECK(group_descriptor(g2.group) == "(Z/2)^2");

  auto g3 = group_structure_oracle(companion_matrix(c5.f), c5);
  CHECK(g3.invariant_factors == ints({1, 4}));
  CHECK(g3.cyclic);

  CHECK(group_descriptor(ints({2, 6})) == "Z/2 x Z/6");
  CHECK(group_descriptor({}) == "0");
}

TEST_CASE("classify_isogeny_class examples") {
  auto c2 = ctx_of(2, 1, 1, {1, 1, 2});
  auto r2 = classify_isogeny_class(c2);
  CHECK(r2.summary.total == 1);
  CHECK(r2.summary.cyclic == 1);
  CHECK(r2.summary.not_cyclic == 0);
  CHECK(r2.summary.completeness == Completeness::certified);
  CHECK(r2.consistent());
  CHECK(group_descriptor(r2.reports[0].group) == "Z/4");

  auto c5 = ctx_of(5, 1, 1, {1, -2, 5});
  auto r5 = classify_isogeny_class(c5);
  REQUIRE(r5.summary.total == 2);
  CHECK(r5.summary.cyclic == 1);
  CHECK(r5.summary.not_cyclic == 1);
  CHECK(r5.consistent());
  std::multiset<std::string> groups;
  std::set<Int> taus;
  for (const auto& r : r5.reports) {
    groups.insert(group_descriptor(r.group));
    taus.insert(r.tau_one_minus_m);
    CHECK(r.oracle_agrees);
  }
  CHECK(groups == std::multiset<std::string>{"Z/4", "(Z/2)^2"});
  CHECK(taus == std::set<Int>{1, 2});
  REQUIRE(r5.sigma_checks.size() == 1);
  CHECK(r5.sigma_checks[0].ell == 2);
  CHECK(r5.sigma_checks[0].agrees);
  CHECK(r5.sigma_checks[0].by_tau.size() == 1);

  try {
    classify_isogeny_class(ctx_of(2, 1, 1, {1, 0, 2}));
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Refusal);
    CHECK(std::string(e.what()) == "not ordinary");
  }
  // (t^2 + t + 2)^2: ordinary but not simple
  try {
    classify_isogeny_class(ctx_of(2, 1, 2, {1, 2, 5, 4, 4}));
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Refusal);
    CHECK(std::string(e.what()) == "not irreducible");
  }
}

namespace {

void check_report_identities(const Classification& c) {
  const WeilContext& ctx = c.ctx;
  const Int f1 = ctx.point_count();
  const Int qg = pow(ctx.q, ctx.g);
  FieldPtr field = make_field(ctx);
  for (const auto& r : c.reports) {
    const IntMatrix& m = r.class_ref.rep;
    CHECK(oracle::laplace_det(m) == qg);
    CHECK(oracle::laplace_det(one_minus(m)) == f1);
    CHECK(r.tau_m == oracle_tau(m));
    CHECK(r.tau_one_minus_m == oracle_tau(one_minus(m)));
    CHECK(f1 % r.tau_one_minus_m == 0);
    CHECK(r.gcd_with_point_count == r.tau_one_minus_m);
    CHECK(r.invariant_factors == oracle::invariant_factors(one_minus(m)));
    Int prod = 1;
    for (const auto& s : r.invariant_factors) prod *= s;
    CHECK(prod == f1);
    IntMatrix fm = evaluate_at(ctx.f, m);
    CHECK(fm == IntMatrix(m.rows(), m.cols()));
    CHECK(r.in_m_f_1);
    CHECK(r.q_stable);
    CHECK((!r.in_m_f_2 || r.in_m_f_1));
    // non-cyclic predicate against the oracle, computed independently
    bool oracle_noncyclic = r.invariant_factors.size() >= 2 && r.invariant_factors[r.invariant_factors.size() - 2] > 1;
    CHECK((r.gcd_with_point_count >= 2) == oracle_noncyclic);
    CHECK(r.oracle_agrees);
    CHECK(!r.zero_cofactor);
  }
  CHECK(c.consistent());
  for (const auto& sc : c.sigma_checks) CHECK(sc.agrees);
}

}  // namespace

TEST_CASE("report identities on the quadratic corpus") {
  for (auto [p, r] : std::vector<std::pair<long, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    for (const auto& ctx : enumerate_weil_contexts(p, r, 1, {true, true})) {
      auto c = classify_isogeny_class(ctx);
      CHECK(c.summary.completeness == Completeness::certified);
      check_report_identities(c);
    }
  }
}

TEST_CASE("report identities on quartic contexts over F_2") {
  for (const auto& ctx : enumerate_weil_contexts(2, 1, 2, {true, true})) {
    auto c = classify_isogeny_class(ctx);
    CHECK(c.summary.completeness == Completeness::certified);
    check_report_identities(c);
  }
}

TEST_CASE("reports are invariant under unimodular conjugation") {
  std::mt19937_64 rng(71);
  std::vector<std::pair<WeilContext, IntMatrix>> pool;
  for (const auto& ctx : enumerate_weil_contexts(3, 1, 1, {true, true}))
    for (const auto& r : classify_isogeny_class(ctx).reports) pool.emplace_back(ctx, r.class_ref.rep);
  for (const auto& ctx : enumerate_weil_contexts(2, 1, 2, {true, true}))
    for (const auto& r : classify_isogeny_class(ctx).reports) pool.emplace_back(ctx, r.class_ref.rep);
  REQUIRE(pool.size() > 10);
  for (int t = 0; t < 300; ++t) {
    const auto& [ctx, m] = pool[rng() % pool.size()];
    auto [u, ui] = gen::random_unimodular(rng, m.rows(), 5, 30);
    REQUIRE(u * ui == IntMatrix::identity(m.rows()));
    IntMatrix m2 = u * m * ui;
    CHECK(tau(m2) == tau(m));
    CHECK(tau(one_minus(m2)) == tau(one_minus(m)));
    CHECK(membership(m2, ctx, 1) == membership(m, ctx, 1));
    CHECK(membership(m2, ctx, 2) == membership(m, ctx, 2));
    CHECK(group_structure_oracle(m2, ctx).invariant_factors == group_structure_oracle(m, ctx).invariant_factors);
  }
}

TEST_CASE("report_for_matrix matches the classified report") {
  auto c5 = ctx_of(5, 1, 1, {1, -2, 5});
  FieldPtr k = make_field(c5);
  auto r = report_for_matrix(k, c5, mat(2, {1, -2, 2, 1}));
  CHECK(r.verdict == Verdict::not_cyclic);
  CHECK(r.tau_one_minus_m == 2);
  CHECK(r.class_ref.ideal.has_value());
  auto r2 = report_for_matrix(k, c5, companion_matrix(c5.f));
  CHECK(r2.verdict == Verdict::cyclic);
}
