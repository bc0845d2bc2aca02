#pragma once

#include <string>
#include <vector>

#include "avcyc/bigint.hpp"
#include "avcyc/error.hpp"
#include "avcyc/polynomial.hpp"

namespace avcyc {

/// An isogeny-class candidate: q = p^r, dimension g, and a monic degree-2g
/// polynomial. Flags record what was verified; construction never throws on
/// a well-formed but non-Weil polynomial.
struct WeilContext {
  Int p;
  unsigned r = 1;
  Int q;
  unsigned g = 1;
  poly::IntPoly f;  ///< lowest degree first
  bool is_weil = false;
  bool is_ordinary = false;
  bool is_irreducible = false;
  std::string weil_reason;  ///< empty when is_weil

  std::vector<Int> coefficients_high_first() const { return poly::to_high_first(f); }
  std::string poly_text() const { return poly::format_high_first(f); }
  Int point_count() const;
  bool classifiable() const { return is_weil && is_ordinary && is_irreducible; }
};

struct WeilCheck {
  bool ok = false;
  std::string reason;  ///< "constant_term", "not_symmetric", "root_size", "degree"
};

/// Throws Error(NotPrime | NonMonic | WrongDegree | InvalidArgument).
WeilContext make_context(const Int& p, unsigned r, unsigned g, const std::vector<Int>& high_first);

/// Exact decision that every complex root of f has absolute value sqrt(q).
WeilCheck validate_weil(const poly::IntPoly& f, const Int& q);

/// The real polynomial h with f(t) = t^g h(t + q/t), for symmetric f.
poly::IntPoly real_weil_polynomial(const poly::IntPoly& f, const Int& q);

/// Number of distinct real roots of a squarefree rational polynomial in
/// the closed interval [-2 sqrt(q), 2 sqrt(q)], by Sturm sequences.
int count_roots_in_weil_interval(const poly::RatPoly& squarefree, const Int& q);

/// Middle coefficient coprime to p.
bool is_ordinary(const poly::IntPoly& f, const Int& p);

Int point_count(const poly::IntPoly& f);

inline constexpr int kIrreducibilityDegreeCap = 8;
/// Exact irreducibility over Q for monic integer f; throws Capability above the cap.
bool is_irreducible(const poly::IntPoly& f);

struct WeilFilter {
  bool require_ordinary = false;
  bool require_irreducible = false;
};

inline constexpr long kDefaultQCap = 16;

/// All q-Weil polynomials of degree 2g (g in {1,2}) passing the filter,
/// sorted lexicographically by their highest-first coefficient lists.
std::vector<WeilContext> enumerate_weil_contexts(const Int& p, unsigned r, unsigned g,
                                                 const WeilFilter& filter,
                                                 long q_cap = kDefaultQCap);

}  // namespace avcyc
