#include "avcyc/number_field.hpp"

#include "avcyc/error.hpp"
#include "avcyc/exact_linalg.hpp"
#include "avcyc/weil_poly.hpp"

namespace avcyc {

NumberField::NumberField(poly::IntPoly f, Int q) : f_(std::move(f)), q_(std::move(q)) {
  poly::trim(f_);
  const int deg = poly::degree(f_);
  if (deg < 1 || f_.back() != 1)
    throw Error(ErrorCode::InvalidArgument, "field modulus must be monic of positive degree");
  if (f_[0] == 0) throw Error(ErrorCode::InvalidArgument, "field modulus has a zero root");
  n_ = static_cast<std::size_t>(deg);

  powers_.assign(2 * n_ - 1, std::vector<Int>(n_));
  for (std::size_t k = 0; k < n_; ++k) powers_[k][k] = 1;
  for (std::size_t k = n_; k + 1 < 2 * n_; ++k) {
    // alpha^k = alpha * alpha^{k-1}; alpha^n = -sum f_i alpha^i.
    const auto& prev = powers_[k - 1];
    std::vector<Int> cur(n_);
    for (std::size_t i = 0; i + 1 < n_; ++i) cur[i + 1] = prev[i];
    const Int& top = prev[n_ - 1];
    for (std::size_t i = 0; i < n_; ++i) cur[i] -= top * f_[i];
    powers_[k] = std::move(cur);
  }

  // Newton identities for the power sums of the roots.
  power_traces_.assign(n_, 0);
  power_traces_[0] = static_cast<long>(n_);
  for (std::size_t k = 1; k < n_; ++k) {
    // p_k + e-terms: with f = t^n + c_{n-1} t^{n-1} + ..., p_k = -k c_{n-k} - sum_{i=1}^{k-1} c_{n-i} p_{k-i}
    Int s = -static_cast<long>(k) * f_[n_ - k];
    for (std::size_t i = 1; i < k; ++i) s -= f_[n_ - i] * power_traces_[k - i];
    power_traces_[k] = s;
  }

  // conj(alpha) = q / alpha.
  std::vector<Rat> alpha(n_);
  if (n_ > 1) alpha[1] = 1; else alpha[0] = -Rat(f_[0]);
  conj_ = RatMatrix(n_, n_);
  std::vector<Rat> one(n_);
  one[0] = 1;
  RatMatrix ma = multiplication_matrix(alpha);
  auto inv = try_inverse(ma);
  if (!inv) throw Error(ErrorCode::Internal, "alpha is not invertible");
  std::vector<Rat> qa = row_times(one, *inv);
  for (auto& c : qa) c *= q_;
  std::vector<Rat> cur = one;
  for (std::size_t k = 0; k < n_; ++k) {
    conj_.set_row(k, cur);
    cur = multiply(cur, qa);
  }
}

std::vector<Rat> NumberField::multiply(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
  std::vector<Rat> prod(2 * n_ - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  std::vector<Rat> out(n_);
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (k < n_) {
      out[k] += prod[k];
    } else {
      const auto& pk = powers_[k];
      for (std::size_t i = 0; i < n_; ++i)
        if (pk[i] != 0) out[i] += prod[k] * pk[i];
    }
  }
  return out;
}

RatMatrix NumberField::multiplication_matrix(const std::vector<Rat>& x) const {
  RatMatrix m(n_, n_);
  std::vector<Rat> cur = x;
  std::vector<Rat> alpha(n_);
  if (n_ > 1) alpha[1] = 1; else alpha[0] = -Rat(f_[0]);
  for (std::size_t i = 0; i < n_; ++i) {
    m.set_row(i, cur);
    if (i + 1 < n_) cur = multiply(cur, alpha);
  }
  return m;
}

std::vector<Rat> NumberField::conjugate(const std::vector<Rat>& x) const { return row_times(x, conj_); }

Rat NumberField::trace(const std::vector<Rat>& x) const {
  Rat t = 0;
  for (std::size_t k = 0; k < n_; ++k)
    if (x[k] != 0) t += x[k] * power_traces_[k];
  return t;
}

Rat NumberField::norm(const std::vector<Rat>& x) const {
  // Clear denominators so the determinant runs fraction-free.
  Int den = 1;
  for (const auto& c : x) den = lcm(den, c.get_den());
  std::vector<Rat> scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] * den;
  RatMatrix m = multiplication_matrix(scaled);
  IntMatrix mi(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) mi(i, j) = m(i, j).get_num();
  Rat r(determinant(mi));
  r /= Rat(pow(den, static_cast<unsigned long>(n_)));
  return r;
}

Rat NumberField::hermitian_trace(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  return trace(multiply(x, conjugate(y)));
}

FieldPtr make_field(poly::IntPoly f, Int q) {
  return std::make_shared<const NumberField>(std::move(f), std::move(q));
}

FieldPtr make_field(const WeilContext& ctx) {
  if (!ctx.is_irreducible)
    throw Error(ErrorCode::Refusal, "polynomial " + ctx.poly_text() + " is not irreducible");
  return make_field(ctx.f, ctx.q);
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "element without a field");
  if (coeffs_.size() != field_->degree())
    throw Error(ErrorCode::InvalidArgument, "element has the wrong number of coordinates");
}

FieldElement FieldElement::zero(FieldPtr field) {
  std::vector<Rat> c(field->degree());
  return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::one(FieldPtr field) { return integer(std::move(field), 1); }

FieldElement FieldElement::integer(FieldPtr field, const Rat& value) {
  std::vector<Rat> c(field->degree());
  c[0] = value;
  return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::alpha(FieldPtr field) {
  std::vector<Rat> c(field->degree());
  if (c.size() > 1) c[1] = 1; else c[0] = -Rat(field->modulus()[0]);
  return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::verschiebung(FieldPtr field) {
  return alpha(field).conjugate();
}

bool FieldElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  std::vector<Rat> c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  std::vector<Rat> c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  std::vector<Rat> c = coeffs_;
  for (auto& x : c) x = -x;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  return FieldElement(field_, field_->multiply(coeffs_, o.coeffs_));
}

FieldElement FieldElement::operator*(const Rat& s) const {
  std::vector<Rat> c = coeffs_;
  for (auto& x : c) x *= s;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  RatMatrix m = field_->multiplication_matrix(coeffs_);
  auto inv = try_inverse(m);
  if (!inv) throw Error(ErrorCode::Internal, "multiplication matrix is singular");
  std::vector<Rat> one(field_->degree());
  one[0] = 1;
  return FieldElement(field_, row_times(one, *inv));
}

FieldElement FieldElement::conjugate() const {
  return FieldElement(field_, field_->conjugate(coeffs_));
}

Rat FieldElement::trace() const { return field_->trace(coeffs_); }
Rat FieldElement::norm() const { return field_->norm(coeffs_); }

std::vector<Rat> FieldElement::charpoly() const {
  return avcyc::charpoly(field_->multiplication_matrix(coeffs_));
}

bool FieldElement::is_integral() const {
  for (const auto& c : charpoly())
    if (!is_integer(c)) return false;
  return true;
}

FieldElement elem_mul(const FieldElement& x, const FieldElement& y) { return x * y; }
FieldElement elem_inverse(const FieldElement& x) { return x.inverse(); }

}  // namespace avcyc
