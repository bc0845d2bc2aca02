#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avcyc/icm_enumerator.hpp"
#include "avcyc/latimer_macduffee.hpp"
#include "avcyc/weil_poly.hpp"

namespace avcyc {

/// q^{g-1} | tau(M) and gcd(tau(1 - M), f(1)) >= c, with gcd(0, n) = n.
/// c must be 1 or 2; throws CharpolyMismatch unless charpoly(M) = f.
bool membership(const IntMatrix& m, const WeilContext& ctx, int c);

struct QStability {
  bool inverse_integral = false;  ///< q M^{-1} in M_n(Z)
  bool tau_divisible = false;     ///< q^{g-1} | tau(M)
  bool ideal_stable = false;      ///< (q/alpha) I_M in I_M
};

/// All three routes; throws Internal if they disagree.
QStability q_stability_routes(const FieldPtr& field, const IntMatrix& m, const WeilContext& ctx);
bool q_stability_check(const IntMatrix& m, const WeilContext& ctx);

struct GroupStructure {
  std::vector<Int> invariant_factors;  ///< SNF of I - M, all n of them
  std::vector<Int> group;              ///< the factors > 1
  bool cyclic = false;
};

/// Rational-point group read off the Smith form of I - M.
GroupStructure group_structure_oracle(const IntMatrix& m, const WeilContext& ctx);

/// "Z/4", "(Z/2)^2", "Z/2 x Z/6", "0".
std::string group_descriptor(const std::vector<Int>& group);

enum class Verdict { cyclic, not_cyclic };
const char* to_string(Verdict v);

struct CyclicityReport {
  MatrixClass class_ref;
  Int index;  ///< [O : I] of the ideal representative
  Int tau_m;
  Int tau_one_minus_m;
  Int gcd_with_point_count;
  bool zero_cofactor = false;  ///< gcd(0, f(1)) convention was used
  bool in_m_f_1 = false;
  bool in_m_f_2 = false;
  bool q_stable = false;
  std::vector<Int> invariant_factors;
  std::vector<Int> group;
  Verdict verdict = Verdict::cyclic;
  bool oracle_agrees = false;
};

/// Report for a single matrix; the ideal is rebuilt when class_ref has none.
CyclicityReport report_for_matrix(const FieldPtr& field, const WeilContext& ctx, const IntMatrix& m);

struct SigmaCheck {
  Int ell;
  std::vector<std::size_t> by_sigma;  ///< refine_by_sigma
  std::vector<std::size_t> by_tau;    ///< ell | gcd(tau(1 - M), f(1))
  bool agrees = false;
};

struct ClassificationSummary {
  std::size_t total = 0;
  std::size_t cyclic = 0;
  std::size_t not_cyclic = 0;
  std::size_t oracle_disagreements = 0;
  std::size_t zero_cofactor_cases = 0;
  Completeness completeness = Completeness::heuristic;
  bool sigma_agrees = true;
};

struct Classification {
  WeilContext ctx;
  IcmResult icm;
  std::vector<CyclicityReport> reports;  ///< aligned with icm.classes
  std::vector<SigmaCheck> sigma_checks;
  ClassificationSummary summary;
  /// Healthy build: oracle agrees everywhere and both sigma routes coincide.
  bool consistent() const { return summary.oracle_disagreements == 0 && summary.sigma_agrees; }
};

/// Refuses (ErrorCode::Refusal) unless ctx is Weil, ordinary and irreducible.
/// Without an index bound the certified bound is used.
Classification classify_isogeny_class(const WeilContext& ctx, std::optional<Int> index_bound = {},
                                      const IcmOptions& opts = {});

/// Reason string for a refused context, empty when classifiable.
std::string refusal_reason(const WeilContext& ctx);

}  // namespace avcyc
