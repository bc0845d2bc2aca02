#pragma once

#include <optional>
#include <vector>

#include "avcyc/matrix.hpp"

namespace avcyc {

/// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& a);
Rat determinant(const RatMatrix& a);

/// Cof(A)_{ij} = (-1)^{i+j} det(A without row i, column j); the 1x1 case is [1].
IntMatrix cofactor_matrix(const IntMatrix& a);

/// gcd of all entries; 0 for the zero matrix.
Int content(const IntMatrix& a);

/// gcd of the entries of the cofactor matrix.
Int tau(const IntMatrix& a);

bool is_unimodular(const IntMatrix& u);

struct SnfResult {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;
  std::vector<Int> invariant_factors;
};

/// U*A*V = S with S diagonal, s_1 | s_2 | ... , all s_i >= 0.
/// Pivot: smallest nonzero |entry| of the active block, row-major tie-break.
SnfResult smith_normal_form(const IntMatrix& a);

struct HnfResult {
  IntMatrix h;          ///< rows x cols, nonzero rows first
  IntMatrix u;          ///< rows x rows unimodular, u * (a * denominator) == h
  Int denominator = 1;  ///< lcm of the input denominators
  std::size_t rank = 0;
};

/// Row Hermite form of an integer matrix: pivots move right going down,
/// pivots positive, entries above a pivot reduced into [0, pivot).
HnfResult hnf_with_transform(const IntMatrix& a);
/// Hermite form only, without the transform.
IntMatrix hnf_rows(const IntMatrix& a, std::size_t* rank = nullptr);
/// Same for a rational matrix after clearing the common denominator.
HnfResult hnf_with_transform(const RatMatrix& a);

/// Hermite form for a full row rank input. Throws DegenerateLattice otherwise.
HnfResult hermite_normal_form(const RatMatrix& a);

/// Basis (as rows) of the left kernel {x in Z^m : x * a = 0}.
IntMatrix integer_left_kernel(const IntMatrix& a);

/// Exact inverse; throws on singular input.
RatMatrix inverse(const RatMatrix& a);
std::optional<RatMatrix> try_inverse(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);

/// Characteristic polynomial det(tI - A), coefficients low degree first, monic.
std::vector<Rat> charpoly(const RatMatrix& a);
std::vector<Int> charpoly(const IntMatrix& a);

/// Integer matrix when every entry is integral.
std::optional<IntMatrix> to_integer(const RatMatrix& a);

IntMatrix random_unimodular(std::size_t n, unsigned steps, int max_entry, unsigned long seed);

}  // namespace avcyc
