#pragma once

#include <optional>

#include "avcyc/order_ideal.hpp"

namespace avcyc {

/// A representative of a conjugacy class in M_{n,f}(Z).
struct MatrixClass {
  IntMatrix rep;
  poly::IntPoly charpoly;  ///< lowest degree first, equals f
  std::optional<IdealLattice> ideal;
};

/// Matrix of multiplication by alpha on the canonical basis of a; column j
/// holds the coordinates of alpha * b_j. Throws NotAModule if alpha * a is
/// not inside a.
MatrixClass ideal_to_matrix(const IdealLattice& a);

/// { c in K : c v0 in Z^n } where c acts as g(M) for c = g(alpha). An empty
/// v0 means e_1, falling back to e_2, ... on a degenerate solve.
/// Throws CharpolyMismatch, ZeroElement (v0 = 0) or InvalidArgument (shape).
IdealLattice matrix_to_ideal(const FieldPtr& field, const IntMatrix& m, std::vector<Int> v0 = {});

/// Basis a_1..a_n of matrix_to_ideal(m, v0) on which alpha acts exactly by m.
RatMatrix matrix_ideal_basis(const FieldPtr& field, const IntMatrix& m, std::vector<Int> v0 = {});

enum class Conjugacy { conjugate, not_conjugate, indeterminate };
const char* to_string(Conjugacy c);

struct ConjugacyResult {
  Conjugacy status = Conjugacy::indeterminate;
  std::optional<IntMatrix> u;  ///< B = U A U^{-1}, verified
  EquivalenceResult equivalence;
};

/// Both matrices must have characteristic polynomial f (CharpolyMismatch).
ConjugacyResult matrices_conjugate(const FieldPtr& field, const IntMatrix& a, const IntMatrix& b,
                                   const EquivalenceOptions& opts = {},
                                   EquivalenceCache* cache = nullptr);

/// Companion matrix in the column convention: alpha * alpha^j = alpha^{j+1}.
IntMatrix companion_matrix(const poly::IntPoly& f);

/// f(M) computed exactly.
IntMatrix evaluate_at(const poly::IntPoly& f, const IntMatrix& m);

}  // namespace avcyc
