#pragma once

#include <memory>
#include <vector>

#include "avcyc/matrix.hpp"
#include "avcyc/polynomial.hpp"

namespace avcyc {

struct WeilContext;

/// K = Q[t]/(f) with f monic irreducible, together with the involution
/// alpha -> q/alpha (complex conjugation when f is an ordinary Weil polynomial).
class NumberField {
 public:
  NumberField(poly::IntPoly f, Int q);

  std::size_t degree() const noexcept { return n_; }
  const poly::IntPoly& modulus() const noexcept { return f_; }
  const Int& q() const noexcept { return q_; }

  std::vector<Rat> multiply(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
  /// Row i holds the coordinates of x * alpha^i.
  RatMatrix multiplication_matrix(const std::vector<Rat>& x) const;
  std::vector<Rat> conjugate(const std::vector<Rat>& x) const;
  Rat trace(const std::vector<Rat>& x) const;
  Rat norm(const std::vector<Rat>& x) const;
  /// Tr(x * conj(y)); positive definite for CM fields.
  Rat hermitian_trace(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

 private:
  poly::IntPoly f_;
  Int q_;
  std::size_t n_;
  std::vector<std::vector<Int>> powers_;  // alpha^k reduced, k < 2n - 1
  std::vector<Int> power_traces_;         // Tr(alpha^k), k < n
  RatMatrix conj_;                        // row k: coordinates of (q/alpha)^k
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Requires an irreducible context; throws Refusal otherwise.
FieldPtr make_field(const WeilContext& ctx);
FieldPtr make_field(poly::IntPoly f, Int q);

/// Element of K in the power basis {1, alpha, ..., alpha^{n-1}}.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<Rat> coeffs);

  static FieldElement zero(FieldPtr field);
  static FieldElement one(FieldPtr field);
  static FieldElement integer(FieldPtr field, const Rat& value);
  static FieldElement alpha(FieldPtr field);
  /// q / alpha.
  static FieldElement verschiebung(FieldPtr field);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Rat>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator*(const Rat& s) const;
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Exact linear solve against the multiplication matrix; throws ZeroElement for 0.
  FieldElement inverse() const;
  FieldElement conjugate() const;
  Rat trace() const;
  Rat norm() const;
  /// Characteristic polynomial of multiplication by this element, lowest first.
  std::vector<Rat> charpoly() const;
  /// Monic integer characteristic polynomial.
  bool is_integral() const;

 private:
  FieldPtr field_;
  std::vector<Rat> coeffs_;
};

FieldElement elem_mul(const FieldElement& x, const FieldElement& y);
FieldElement elem_inverse(const FieldElement& x);

}  // namespace avcyc
