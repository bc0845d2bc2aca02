#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avcyc/exact_linalg.hpp"
#include "avcyc/number_field.hpp"

namespace avcyc {

/// Full-rank Z-lattice in K stored as (canonical row HNF, denominator):
/// the lattice is the row span of hnf() / denominator(), with
/// gcd(denominator, content(hnf)) == 1. Equal lattices have equal data.
class IdealLattice {
 public:
  IdealLattice() = default;

  /// Throws DegenerateLattice if the rows do not span K.
  static IdealLattice from_rows(FieldPtr field, const RatMatrix& rows);
  static IdealLattice from_elements(const std::vector<FieldElement>& elems);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t degree() const noexcept { return basis_.rows(); }
  const IntMatrix& hnf() const noexcept { return basis_; }
  const Int& denominator() const noexcept { return denominator_; }

  RatMatrix basis_matrix() const;
  std::vector<FieldElement> basis() const;
  FieldElement basis_element(std::size_t i) const;

  /// Integer coordinates of x in the stored basis, if x lies in the lattice.
  std::optional<std::vector<Int>> coordinates(const FieldElement& x) const;
  bool contains(const FieldElement& x) const { return coordinates(x).has_value(); }
  bool contains(const IdealLattice& sub) const;
  bool stable_under(const FieldElement& x) const;

  IdealLattice scaled(const FieldElement& x) const;
  IdealLattice scaled(const Rat& s) const;

  /// |covolume| in power-basis coordinates.
  Rat covolume() const;

  friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
    return a.denominator_ == b.denominator_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const IdealLattice& a, const IdealLattice& b) { return !(a == b); }
  /// Deterministic total order on canonical data.
  friend bool operator<(const IdealLattice& a, const IdealLattice& b);

  std::string key() const;

 private:
  FieldPtr field_;
  IntMatrix basis_;
  Int denominator_ = 1;
};

struct OrderDesc {
  IdealLattice lattice;
  std::vector<FieldElement> generators;  ///< ring generators (1 implicit)
};

/// Smallest order containing 1 and the given algebraic integers.
/// Throws NotAnOrderGenerator for a non-integral generator.
OrderDesc ring_closure(FieldPtr field, const std::vector<FieldElement>& generators);
/// Z[alpha, q/alpha].
OrderDesc frobenius_order(FieldPtr field);
/// Checks 1 in O and O*O subset O.
bool is_order(const IdealLattice& lattice);

IdealLattice ideal_product(const IdealLattice& a, const IdealLattice& b);
IdealLattice ideal_sum(const IdealLattice& a, const IdealLattice& b);
IdealLattice ideal_intersection(const IdealLattice& a, const IdealLattice& b);
/// (a : b) = { x in K : x b subset a }.
IdealLattice ideal_quotient(const IdealLattice& a, const IdealLattice& b);
/// (a : a) as an order; throws Internal if the ring checks fail.
OrderDesc multiplicator_ring(const IdealLattice& a);
/// Trace dual { x : Tr(x L) subset Z }.
IdealLattice trace_dual(const IdealLattice& a);

/// [sup : sub] generalized to any two full lattices: covol(sub) / covol(sup).
Rat lattice_index(const IdealLattice& sub, const IdealLattice& sup);

/// det(Tr(b_i b_j)) on the lattice basis.
Rat trace_discriminant(const IdealLattice& a);
Int discriminant(const OrderDesc& order);

// ---- equivalence -----------------------------------------------------------

enum class Equivalence { equivalent, not_equivalent, indeterminate };
const char* to_string(Equivalence e);

struct EquivalenceOptions {
  /// Search radius for T2 = Tr(x conj(x)) as a multiple of the AM-GM minimum
  /// n |N(x)|^{2/n}; used when no certified radius is available.
  Rat search_scale = 16;
  /// Largest certified radius multiple that will be attempted.
  Rat certified_scale_cap = 64;
  unsigned long max_nodes = 20'000'000;
};

struct EquivalenceResult {
  Equivalence status = Equivalence::indeterminate;
  std::optional<FieldElement> witness;  ///< x with x * a == b
  Rat radius;                           ///< T2 radius searched
  bool certified = false;               ///< radius provably covers a generator
  std::string note;
};

/// Caches per-order unit data across calls; not thread-safe.
class EquivalenceCache {
 public:
  std::optional<Rat> certified_scale(const IdealLattice& order);

 private:
  std::map<std::string, std::optional<Rat>> scales_;
};

/// Searches x with x * a == b. Distinct multiplicator rings short-circuit to
/// not_equivalent. For 2g = 2 the search radius is certified; for 2g = 4 it is
/// certified when a unit of the real subring is small enough, otherwise the
/// result may be indeterminate.
EquivalenceResult ideal_equivalent(const IdealLattice& a, const IdealLattice& b,
                                   const EquivalenceOptions& opts = {},
                                   EquivalenceCache* cache = nullptr);

struct QuadUnit {
  Int x, y;  ///< (x + y sqrt(D)) / 2, with x^2 - D y^2 = +-4
};
/// Fundamental unit of the quadratic order of discriminant D > 0 (D not a
/// square), read off the continued fraction period.
std::optional<QuadUnit> real_quadratic_unit(const Int& disc, unsigned max_period = 100000);

/// Multiplier bound: sqrt(Tr_{K+}(eps^2) + 2) / 2 for a unit eps > 1 of
/// O cap K+, when 2g = 4 and such a unit is found. Exposed for tests.
std::optional<Rat> unit_balancing_scale(const IdealLattice& order);

}  // namespace avcyc
