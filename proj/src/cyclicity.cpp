#include "avcyc/cyclicity.hpp"

#include <algorithm>
#include <iostream>

#include "avcyc/exact_linalg.hpp"

namespace avcyc {

namespace {

void require_charpoly(const IntMatrix& m, const WeilContext& ctx) {
  if (m.rows() != m.cols() || m.rows() != 2 * ctx.g)
    throw Error(ErrorCode::CharpolyMismatch, "not in M_{n,f}: wrong dimension");
  if (charpoly(m) != ctx.f) throw Error(ErrorCode::CharpolyMismatch, "not in M_{n,f}");
}

IntMatrix one_minus(const IntMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = (i == j ? Int(1) : Int(0)) - m(i, j);
  return r;
}

// gcd with the convention gcd(0, n) = n
Int gcd_zero_is_n(const Int& t, const Int& n) {
  if (t == 0) return abs(n);
  return gcd(t, n);
}

struct Taus {
  Int tau_m, tau_1m, g;
};

Taus taus(const IntMatrix& m, const WeilContext& ctx) {
  Taus t{tau(m), tau(one_minus(m)), 0};
  t.g = gcd_zero_is_n(t.tau_1m, ctx.point_count());
  if (t.tau_1m == 0)
    std::clog << "avcyc: tau(1 - M) = 0 for f = " << ctx.poly_text() << "; using gcd(0, n) = n\n";
  return t;
}

bool member_from(const Taus& t, const WeilContext& ctx, int c) {
  Int qg = pow(ctx.q, ctx.g - 1);
  return t.tau_m % qg == 0 && t.g >= c;
}

}  // namespace

bool membership(const IntMatrix& m, const WeilContext& ctx, int c) {
  if (c != 1 && c != 2) throw Error(ErrorCode::InvalidArgument, "membership level must be 1 or 2");
  require_charpoly(m, ctx);
  return member_from(taus(m, ctx), ctx, c);
}

QStability q_stability_routes(const FieldPtr& field, const IntMatrix& m, const WeilContext& ctx) {
  require_charpoly(m, ctx);
  QStability r;
  // q M^{-1} = q Cof(M)^t / det(M)
  IntMatrix cof = cofactor_matrix(m);
  Int det = determinant(m);
  r.inverse_integral = true;
  for (std::size_t i = 0; i < cof.rows() && r.inverse_integral; ++i)
    for (std::size_t j = 0; j < cof.cols(); ++j)
      if ((ctx.q * cof(i, j)) % det != 0) {
        r.inverse_integral = false;
        break;
      }
  r.tau_divisible = tau(m) % pow(ctx.q, ctx.g - 1) == 0;
  IdealLattice ideal = matrix_to_ideal(field, m);
  r.ideal_stable = ideal.stable_under(FieldElement::verschiebung(field));
  if (r.inverse_integral != r.tau_divisible || r.tau_divisible != r.ideal_stable)
    throw Error(ErrorCode::Internal, "q-stability routes disagree");
  return r;
}

bool q_stability_check(const IntMatrix& m, const WeilContext& ctx) {
  require_charpoly(m, ctx);
  return q_stability_routes(make_field(ctx), m, ctx).tau_divisible;
}

GroupStructure group_structure_oracle(const IntMatrix& m, const WeilContext& ctx) {
  require_charpoly(m, ctx);
  GroupStructure gs;
  gs.invariant_factors = smith_normal_form(one_minus(m)).invariant_factors;
  for (const auto& s : gs.invariant_factors)
    if (s != 1) gs.group.push_back(s);
  gs.cyclic = gs.group.size() <= 1;
  return gs;
}

std::string group_descriptor(const std::vector<Int>& group) {
  if (group.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < group.size();) {
    std::size_t j = i;
    while (j < group.size() && group[j] == group[i]) ++j;
    if (!out.empty()) out += " x ";
    std::string z = "Z/" + to_string(group[i]);
    out += (j - i == 1) ? z : "(" + z + ")^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

const char* to_string(Verdict v) { return v == Verdict::cyclic ? "cyclic" : "not_cyclic"; }

namespace {

CyclicityReport build_report(const FieldPtr& field, const WeilContext& ctx, MatrixClass cls) {
  const IntMatrix& m = cls.rep;
  CyclicityReport r;
  Taus t = taus(m, ctx);
  r.tau_m = t.tau_m;
  r.tau_one_minus_m = t.tau_1m;
  r.gcd_with_point_count = t.g;
  r.zero_cofactor = t.tau_1m == 0;
  r.in_m_f_1 = member_from(t, ctx, 1);
  r.in_m_f_2 = member_from(t, ctx, 2);
  r.q_stable = q_stability_routes(field, m, ctx).tau_divisible;
  GroupStructure gs = group_structure_oracle(m, ctx);
  r.invariant_factors = gs.invariant_factors;
  r.group = gs.group;
  r.verdict = r.in_m_f_2 ? Verdict::not_cyclic : Verdict::cyclic;
  r.oracle_agrees = (r.verdict == Verdict::cyclic) == gs.cyclic;
  r.class_ref = std::move(cls);
  return r;
}

}  // namespace

CyclicityReport report_for_matrix(const FieldPtr& field, const WeilContext& ctx, const IntMatrix& m) {
  require_charpoly(m, ctx);
  MatrixClass cls{m, ctx.f, matrix_to_ideal(field, m)};
  return build_report(field, ctx, std::move(cls));
}

std::string refusal_reason(const WeilContext& ctx) {
  if (!ctx.is_weil) return "not a Weil polynomial (" + ctx.weil_reason + ")";
  if (!ctx.is_ordinary) return "not ordinary";
  if (!ctx.is_irreducible) return "not irreducible";
  return {};
}

Classification classify_isogeny_class(const WeilContext& ctx, std::optional<Int> index_bound,
                                      const IcmOptions& opts) {
  std::string why = refusal_reason(ctx);
  if (!why.empty()) throw Error(ErrorCode::Refusal, why);

  Classification out;
  out.ctx = ctx;
  FieldPtr field = make_field(ctx);
  OrderDesc o = frobenius_order(field);
  Int bound = index_bound ? *index_bound : certified_index_bound(o);
  out.icm = enumerate_icm(o, bound, opts);

  for (const auto& cls : out.icm.classes) {
    MatrixClass mc = ideal_to_matrix(cls.rep);
    CyclicityReport r = build_report(field, ctx, std::move(mc));
    r.index = cls.index;
    out.reports.push_back(std::move(r));
  }

  auto& s = out.summary;
  s.total = out.reports.size();
  s.completeness = out.icm.completeness;
  for (const auto& r : out.reports) {
    (r.verdict == Verdict::cyclic ? s.cyclic : s.not_cyclic)++;
    if (!r.oracle_agrees) ++s.oracle_disagreements;
    if (r.zero_cofactor) ++s.zero_cofactor_cases;
  }

  for (const auto& ell : prime_factors(ctx.point_count())) {
    SigmaCheck sc;
    sc.ell = ell;
    sc.by_sigma = refine_by_sigma_indices(out.icm, ell);
    for (std::size_t i = 0; i < out.reports.size(); ++i)
      if (out.reports[i].gcd_with_point_count % ell == 0) sc.by_tau.push_back(i);
    std::sort(sc.by_sigma.begin(), sc.by_sigma.end());
    sc.agrees = sc.by_sigma == sc.by_tau;
    if (!sc.agrees) s.sigma_agrees = false;
    out.sigma_checks.push_back(std::move(sc));
  }
  return out;
}

}  // namespace avcyc
