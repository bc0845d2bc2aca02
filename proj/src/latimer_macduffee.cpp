#include <algorithm>
#include "avcyc/latimer_macduffee.hpp"

namespace avcyc {

namespace {

void require_charpoly(const FieldPtr& field, const IntMatrix& m) {
  const std::size_t n = field->degree();
  if (!m.square() || m.rows() != n)
    throw Error(ErrorCode::InvalidArgument, "matrix dimension does not match the field degree");
  std::vector<Int> cp = charpoly(m);
  if (cp != field->modulus()) throw Error(ErrorCode::CharpolyMismatch, "not in M_{n,f}");
}

// Column j: coordinates of x * basis_j in the given basis (rows).
std::optional<IntMatrix> action_matrix(const RatMatrix& basis, const RatMatrix& target_basis,
                                       const FieldPtr& field, const FieldElement& x) {
  const std::size_t n = basis.rows();
  RatMatrix tinv = inverse(target_basis);
  IntMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    FieldElement bj(field, basis.row(j));
    std::vector<Rat> c = row_times((bj * x).coeffs(), tinv);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integer(c[i])) return std::nullopt;
      out(i, j) = c[i].get_num();
    }
  }
  return out;
}

IntMatrix int_inverse_unimodular(const IntMatrix& u) {
  auto inv = to_integer(inverse(to_rational(u)));
  if (!inv) throw Error(ErrorCode::Internal, "matrix is not unimodular");
  return *inv;
}

}  // namespace

const char* to_string(Conjugacy c) {
  switch (c) {
    case Conjugacy::conjugate: return "conjugate";
    case Conjugacy::not_conjugate: return "not_conjugate";
    case Conjugacy::indeterminate: return "indeterminate";
  }
  return "?";
}

IntMatrix companion_matrix(const poly::IntPoly& f) {
  const std::size_t n = f.size() - 1;
  IntMatrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -f[i];
  return m;
}

IntMatrix evaluate_at(const poly::IntPoly& f, const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix acc(n, n);
  for (std::size_t k = f.size(); k-- > 0;) acc = acc * m + IntMatrix::identity(n).scaled(f[k]);
  return acc;
}

MatrixClass ideal_to_matrix(const IdealLattice& a) {
  const FieldPtr& k = a.field();
  RatMatrix b = a.basis_matrix();
  auto m = action_matrix(b, b, k, FieldElement::alpha(k));
  if (!m) throw Error(ErrorCode::NotAModule, "not a Z[alpha]-module");
  if (charpoly(*m) != k->modulus())
    throw Error(ErrorCode::Internal, "multiplication matrix has the wrong characteristic polynomial");
  return MatrixClass{*m, k->modulus(), a};
}

RatMatrix matrix_ideal_basis(const FieldPtr& field, const IntMatrix& m, std::vector<Int> v0) {
  require_charpoly(field, m);
  const std::size_t n = field->degree();
  std::vector<std::vector<Int>> candidates;
  if (v0.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Int> e(n);
      e[i] = 1;
      candidates.push_back(e);
    }
  } else {
    if (v0.size() != n) throw Error(ErrorCode::InvalidArgument, "v0 has the wrong length");
    if (std::all_of(v0.begin(), v0.end(), [](const Int& x) { return x == 0; }))
      throw Error(ErrorCode::ZeroElement, "v0 must be nonzero");
    candidates.push_back(v0);
  }
  for (const auto& v : candidates) {
    // row k of phi: M^k v
    RatMatrix phi(n, n);
    std::vector<Int> cur = v;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) phi(r, j) = cur[j];
      std::vector<Int> next(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) next[i] += m(i, j) * cur[j];
      cur = std::move(next);
    }
    if (auto inv = try_inverse(phi)) return *inv;
  }
  throw Error(ErrorCode::DegenerateLattice, "no cyclic vector among the candidates");
}

IdealLattice matrix_to_ideal(const FieldPtr& field, const IntMatrix& m, std::vector<Int> v0) {
  RatMatrix p = matrix_ideal_basis(field, m, std::move(v0));
  IdealLattice a = IdealLattice::from_rows(field, p);
  // canonical rows C = W P; the canonical matrix R satisfies W^t R = M W^t
  auto w = to_integer(a.basis_matrix() * inverse(p));
  if (!w || !is_unimodular(*w)) throw Error(ErrorCode::Internal, "basis change is not unimodular");
  IntMatrix r = ideal_to_matrix(a).rep;
  IntMatrix wt = w->transpose();
  if (wt * r != m * wt) throw Error(ErrorCode::Internal, "round trip is not a conjugation");
  return a;
}

ConjugacyResult matrices_conjugate(const FieldPtr& field, const IntMatrix& a, const IntMatrix& b,
                                   const EquivalenceOptions& opts, EquivalenceCache* cache) {
  require_charpoly(field, a);
  require_charpoly(field, b);
  ConjugacyResult res;
  const std::size_t n = field->degree();
  if (a == b) {
    res.status = Conjugacy::conjugate;
    res.u = IntMatrix::identity(n);
    res.equivalence.status = Equivalence::equivalent;
    res.equivalence.witness = FieldElement::one(field);
    res.equivalence.certified = true;
    return res;
  }
  RatMatrix pa = matrix_ideal_basis(field, a), pb = matrix_ideal_basis(field, b);
  IdealLattice ia = IdealLattice::from_rows(field, pa), ib = IdealLattice::from_rows(field, pb);
  res.equivalence = ideal_equivalent(ia, ib, opts, cache);
  switch (res.equivalence.status) {
    case Equivalence::not_equivalent: res.status = Conjugacy::not_conjugate; return res;
    case Equivalence::indeterminate: res.status = Conjugacy::indeterminate; return res;
    case Equivalence::equivalent: break;
  }
  auto t = action_matrix(pa, pb, field, *res.equivalence.witness);
  if (!t || !is_unimodular(*t)) throw Error(ErrorCode::Internal, "witness does not map the bases unimodularly");
  if (*t * a * int_inverse_unimodular(*t) != b) throw Error(ErrorCode::Internal, "conjugation certificate failed");
  res.status = Conjugacy::conjugate;
  res.u = *t;
  return res;
}

}  // namespace avcyc
