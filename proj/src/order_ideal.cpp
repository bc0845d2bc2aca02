#include "avcyc/order_ideal.hpp"

#include <algorithm>
#include <sstream>

#include "avcyc/short_vectors.hpp"

namespace avcyc {

namespace {

void require_same_field(const IdealLattice& a, const IdealLattice& b) {
  if (!a.field() || !b.field()) throw Error(ErrorCode::InvalidArgument, "lattice without a field");
  if (a.field() != b.field() &&
      (a.field()->modulus() != b.field()->modulus() || a.field()->q() != b.field()->q()))
    throw Error(ErrorCode::InvalidArgument, "lattices live in different fields");
}

RatMatrix rows_of(const std::vector<FieldElement>& elems, std::size_t n) {
  RatMatrix m(elems.size(), n);
  for (std::size_t i = 0; i < elems.size(); ++i) m.set_row(i, elems[i].coeffs());
  return m;
}

// Canonical HNF of the rational row span; rank returned separately.
struct Span {
  IntMatrix h;  // rank x n
  Int den = 1;
  std::size_t rank = 0;
};

Span span_of(const RatMatrix& rows) {
  Int den = 1;
  for (const auto& x : rows.data()) den = lcm(den, x.get_den());
  IntMatrix scaled(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) {
      Rat v = rows(i, j) * den;
      scaled(i, j) = v.get_num();
    }
  Span s;
  IntMatrix h = hnf_rows(scaled, &s.rank);
  s.h = IntMatrix(s.rank, rows.cols());
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) s.h(i, j) = h(i, j);
  Int g = gcd(den, content(s.h));
  if (g > 1) {
    for (std::size_t i = 0; i < s.rank; ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j) s.h(i, j) /= g;
    den /= g;
  }
  s.den = den;
  return s;
}

}  // namespace

// ---- IdealLattice -----------------------------------------------------------

IdealLattice IdealLattice::from_rows(FieldPtr field, const RatMatrix& rows) {
  if (!field) throw Error(ErrorCode::InvalidArgument, "null field");
  const std::size_t n = field->degree();
  if (rows.cols() != n) throw Error(ErrorCode::InvalidArgument, "row length does not match field degree");
  Span s = span_of(rows);
  if (s.rank != n) throw Error(ErrorCode::DegenerateLattice, "rows do not span the field");
  IdealLattice l;
  l.field_ = std::move(field);
  l.basis_ = std::move(s.h);
  l.denominator_ = s.den;
  return l;
}

IdealLattice IdealLattice::from_elements(const std::vector<FieldElement>& elems) {
  if (elems.empty()) throw Error(ErrorCode::DegenerateLattice, "no generators");
  FieldPtr f = elems.front().field();
  return from_rows(f, rows_of(elems, f->degree()));
}

RatMatrix IdealLattice::basis_matrix() const {
  RatMatrix m(basis_.rows(), basis_.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      m(i, j) = Rat(basis_(i, j), denominator_);
      m(i, j).canonicalize();
    }
  return m;
}

FieldElement IdealLattice::basis_element(std::size_t i) const {
  std::vector<Rat> c(basis_.cols());
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = Rat(basis_(i, j), denominator_);
    c[j].canonicalize();
  }
  return FieldElement(field_, std::move(c));
}

std::vector<FieldElement> IdealLattice::basis() const {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < degree(); ++i) out.push_back(basis_element(i));
  return out;
}

std::optional<std::vector<Int>> IdealLattice::coordinates(const FieldElement& x) const {
  const std::size_t n = degree();
  std::vector<Rat> r(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = x.coeffs()[j] * denominator_;
  std::vector<Int> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat c = r[j] / basis_(j, j);
    if (!is_integer(c)) return std::nullopt;
    y[j] = c.get_num();
    if (y[j] == 0) continue;
    for (std::size_t k = j; k < n; ++k) r[k] -= y[j] * basis_(j, k);
  }
  return y;
}

bool IdealLattice::contains(const IdealLattice& sub) const {
  for (std::size_t i = 0; i < sub.degree(); ++i)
    if (!contains(sub.basis_element(i))) return false;
  return true;
}

bool IdealLattice::stable_under(const FieldElement& x) const {
  for (std::size_t i = 0; i < degree(); ++i)
    if (!contains(basis_element(i) * x)) return false;
  return true;
}

IdealLattice IdealLattice::scaled(const FieldElement& x) const {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "scaling a lattice by zero");
  std::vector<FieldElement> rows;
  for (const auto& b : basis()) rows.push_back(b * x);
  return from_elements(rows);
}

IdealLattice IdealLattice::scaled(const Rat& s) const {
  if (s == 0) throw Error(ErrorCode::ZeroElement, "scaling a lattice by zero");
  return from_rows(field_, basis_matrix().scaled(s));
}

Rat IdealLattice::covolume() const {
  Int d = abs(determinant(basis_));
  Rat v(d, pow(denominator_, degree()));
  v.canonicalize();
  return v;
}

bool operator<(const IdealLattice& a, const IdealLattice& b) {
  if (a.denominator_ != b.denominator_) return a.denominator_ < b.denominator_;
  return a.basis_.data() < b.basis_.data();
}

std::string IdealLattice::key() const {
  std::ostringstream os;
  os << denominator_.get_str() << ':';
  for (const auto& x : basis_.data()) os << x.get_str() << ',';
  return os.str();
}

// ---- orders -----------------------------------------------------------------

OrderDesc ring_closure(FieldPtr field, const std::vector<FieldElement>& generators) {
  for (const auto& g : generators)
    if (!g.is_integral()) throw Error(ErrorCode::NotAnOrderGenerator, "generator is not integral");
  const std::size_t n = field->degree();
  std::vector<FieldElement> current{FieldElement::one(field)};
  Span prev = span_of(rows_of(current, n));
  while (true) {
    std::vector<FieldElement> next = current;
    for (const auto& b : current)
      for (const auto& g : generators) next.push_back(b * g);
    Span s = span_of(rows_of(next, n));
    current.clear();
    for (std::size_t i = 0; i < s.rank; ++i) {
      std::vector<Rat> c(n);
      for (std::size_t j = 0; j < n; ++j) {
        c[j] = Rat(s.h(i, j), s.den);
        c[j].canonicalize();
      }
      current.emplace_back(field, std::move(c));
    }
    if (s.rank == prev.rank && s.den == prev.den && s.h == prev.h) break;
    prev = std::move(s);
  }
  if (prev.rank != n)
    throw Error(ErrorCode::NotAnOrderGenerator, "generators do not generate an order of full rank");
  OrderDesc o{IdealLattice::from_elements(current), generators};
  if (!is_order(o.lattice)) throw Error(ErrorCode::Internal, "ring closure is not an order");
  return o;
}

OrderDesc frobenius_order(FieldPtr field) {
  return ring_closure(field, {FieldElement::alpha(field), FieldElement::verschiebung(field)});
}

bool is_order(const IdealLattice& lattice) {
  if (!lattice.contains(FieldElement::one(lattice.field()))) return false;
  auto b = lattice.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      if (!lattice.contains(b[i] * b[j])) return false;
  return true;
}

// ---- ideal arithmetic -------------------------------------------------------

IdealLattice ideal_product(const IdealLattice& a, const IdealLattice& b) {
  require_same_field(a, b);
  std::vector<FieldElement> rows;
  auto ab = a.basis(), bb = b.basis();
  for (const auto& x : ab)
    for (const auto& y : bb) rows.push_back(x * y);
  return IdealLattice::from_elements(rows);
}

IdealLattice ideal_sum(const IdealLattice& a, const IdealLattice& b) {
  require_same_field(a, b);
  auto rows = a.basis();
  for (const auto& y : b.basis()) rows.push_back(y);
  return IdealLattice::from_elements(rows);
}

IdealLattice ideal_intersection(const IdealLattice& a, const IdealLattice& b) {
  require_same_field(a, b);
  const std::size_t n = a.degree();
  Int d = lcm(a.denominator(), b.denominator());
  Int sa = d / a.denominator(), sb = d / b.denominator();
  // x = u * (Ha / da) = v * (Hb / db)  <=>  [u v] * [sa Ha; -sb Hb] = 0
  IntMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = sa * a.hnf()(i, j);
      stacked(n + i, j) = -sb * b.hnf()(i, j);
    }
  IntMatrix k = integer_left_kernel(stacked);
  RatMatrix rows(k.rows(), n);
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t j = 0; j < n; ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < n; ++i) s += k(r, i) * a.hnf()(i, j);
      rows(r, j) = Rat(s, a.denominator());
      rows(r, j).canonicalize();
    }
  return IdealLattice::from_rows(a.field(), rows);
}

IdealLattice ideal_quotient(const IdealLattice& a, const IdealLattice& b) {
  require_same_field(a, b);
  std::optional<IdealLattice> acc;
  for (const auto& y : b.basis()) {
    IdealLattice piece = a.scaled(y.inverse());
    acc = acc ? ideal_intersection(*acc, piece) : piece;
  }
  return *acc;
}

OrderDesc multiplicator_ring(const IdealLattice& a) {
  IdealLattice r = ideal_quotient(a, a);
  if (!is_order(r)) throw Error(ErrorCode::Internal, "multiplicator ring failed the ring checks");
  return OrderDesc{r, r.basis()};
}

namespace {

RatMatrix trace_gram(const IdealLattice& a) {
  auto b = a.basis();
  const std::size_t n = b.size();
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = (b[i] * b[j]).trace();
  return g;
}

RatMatrix t2_gram(const std::vector<FieldElement>& b) {
  const std::size_t n = b.size();
  const NumberField& k = *b.front().field();
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      g(i, j) = g(j, i) = k.hermitian_trace(b[i].coeffs(), b[j].coeffs());
  return g;
}

}  // namespace

IdealLattice trace_dual(const IdealLattice& a) {
  RatMatrix ginv = inverse(trace_gram(a));
  return IdealLattice::from_rows(a.field(), ginv * a.basis_matrix());
}

Rat lattice_index(const IdealLattice& sub, const IdealLattice& sup) {
  require_same_field(sub, sup);
  return sub.covolume() / sup.covolume();
}

Rat trace_discriminant(const IdealLattice& a) { return determinant(trace_gram(a)); }

Int discriminant(const OrderDesc& order) {
  Rat d = trace_discriminant(order.lattice);
  if (!is_integer(d)) throw Error(ErrorCode::Internal, "order discriminant is not integral");
  return d.get_num();
}

// ---- equivalence ------------------------------------------------------------

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::not_equivalent: return "not_equivalent";
    case Equivalence::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

Rat sqrt_upper(const Rat& x) { return root_upper(x, 2); }

}  // namespace

// Product of the complete quotients of (b + sqrt(D)) / 2 over one period.
std::optional<QuadUnit> real_quadratic_unit(const Int& disc, unsigned max_period) {
  if (disc <= 0 || is_square(disc)) return std::nullopt;
  Int d = isqrt(disc);
  Int b = ((d - disc) % 2 == 0) ? d : d - 1;
  Int p = b, q = 2;
  // running product (X + Y sqrt(D)) / Z
  Int X = 1, Y = 0, Z = 1;
  for (unsigned step = 0; step < max_period; ++step) {
    Int nx = X * p + Y * disc;
    Int ny = X + Y * p;
    X = nx;
    Y = ny;
    Z *= q;
    Int g = gcd(gcd(X, Y), Z);
    X /= g;
    Y /= g;
    Z /= g;
    Int a = floor_div(p + d, q);
    Int np = a * q - p;
    Int nq = (disc - np * np) / q;
    p = np;
    q = nq;
    if (p == b && q == 2) {
      if ((2 * X) % Z != 0 || (2 * Y) % Z != 0) return std::nullopt;
      QuadUnit u{2 * X / Z, 2 * Y / Z};
      Int nrm = u.x * u.x - disc * u.y * u.y;
      if (nrm != 4 && nrm != -4) return std::nullopt;
      return u;
    }
  }
  return std::nullopt;
}

std::optional<Rat> unit_balancing_scale(const IdealLattice& order) {
  const std::size_t n = order.degree();
  if (n != 4) return std::nullopt;
  FieldPtr k = order.field();
  RatMatrix b = order.basis_matrix();
  // conj(x) - x on lattice coordinates
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement e = order.basis_element(i);
    FieldElement diff = e.conjugate() - e;
    m.set_row(i, diff.coeffs());
  }
  Int den = 1;
  for (const auto& x : m.data()) den = lcm(den, x.get_den());
  IntMatrix mi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat v = m(i, j) * den;
      mi(i, j) = v.get_num();
    }
  IntMatrix ker = integer_left_kernel(mi);
  if (ker.rows() != 2) return std::nullopt;
  std::vector<FieldElement> u;
  for (std::size_t r = 0; r < 2; ++r) {
    std::vector<Rat> c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c[j] += ker(r, i) * b(i, j);
    u.emplace_back(k, std::move(c));
  }
  // 1 = s0 u0 + s1 u1
  RatMatrix two(2, n);
  two.set_row(0, u[0].coeffs());
  two.set_row(1, u[1].coeffs());
  std::optional<Int> s0, s1;
  {
    // solve via two independent columns
    std::size_t c0 = n, c1 = n;
    for (std::size_t a = 0; a < n && c1 == n; ++a)
      for (std::size_t bb = a + 1; bb < n; ++bb)
        if (two(0, a) * two(1, bb) - two(0, bb) * two(1, a) != 0) {
          c0 = a;
          c1 = bb;
          break;
        }
    if (c1 == n) return std::nullopt;
    Rat det = two(0, c0) * two(1, c1) - two(0, c1) * two(1, c0);
    Rat e0 = (c0 == 0) ? Rat(1) : Rat(0);
    Rat e1 = (c1 == 0) ? Rat(1) : Rat(0);
    Rat r0 = (e0 * two(1, c1) - e1 * two(1, c0)) / det;
    Rat r1 = (two(0, c0) * e1 - two(0, c1) * e0) / det;
    if (!is_integer(r0) || !is_integer(r1)) return std::nullopt;
    s0 = r0.get_num();
    s1 = r1.get_num();
  }
  // complete {1, omega}: s0 * t1 - s1 * t0 = 1
  Int g, t1, t0neg;
  mpz_gcdext(g.get_mpz_t(), t1.get_mpz_t(), t0neg.get_mpz_t(), s0->get_mpz_t(), s1->get_mpz_t());
  if (g != 1) return std::nullopt;
  Int t0 = -t0neg;
  FieldElement omega = u[0] * Rat(t0) + u[1] * Rat(t1);
  FieldElement w2 = omega * omega;
  std::size_t j = 1;
  while (j < n && omega.coeffs()[j] == 0) ++j;
  if (j == n) return std::nullopt;
  Rat s = w2.coeffs()[j] / omega.coeffs()[j];
  Rat m0 = w2.coeffs()[0] - s * omega.coeffs()[0];
  if (!(w2 == FieldElement::integer(k, m0) + omega * s)) return std::nullopt;
  if (!is_integer(s) || !is_integer(m0)) return std::nullopt;
  Int disc = s.get_num() * s.get_num() + 4 * m0.get_num();
  auto unit = real_quadratic_unit(disc);
  if (!unit) return std::nullopt;
  // sqrt(D) -> 2 omega - s
  FieldElement root = omega * Rat(2) - FieldElement::integer(k, s);
  FieldElement eps = (FieldElement::integer(k, Rat(unit->x)) + root * Rat(unit->y)) * Rat(1, 2);
  if (!order.contains(eps) || !order.contains(eps.inverse())) return std::nullopt;
  if (eps == FieldElement::one(k) || eps == -FieldElement::one(k)) return std::nullopt;
  Rat tr_plus = (eps * eps).trace() / 2;
  return sqrt_upper(tr_plus + 2) / 2;
}

std::optional<Rat> EquivalenceCache::certified_scale(const IdealLattice& order) {
  std::string k = poly::format_high_first(order.field()->modulus()) + '|' + order.key();
  auto it = scales_.find(k);
  if (it != scales_.end()) return it->second;
  auto v = unit_balancing_scale(order);
  scales_.emplace(std::move(k), v);
  return v;
}

EquivalenceResult ideal_equivalent(const IdealLattice& a, const IdealLattice& b,
                                   const EquivalenceOptions& opts, EquivalenceCache* cache) {
  require_same_field(a, b);
  EquivalenceResult res;
  OrderDesc ra = multiplicator_ring(a);
  OrderDesc rb = multiplicator_ring(b);
  if (ra.lattice != rb.lattice) {
    res.status = Equivalence::not_equivalent;
    res.certified = true;
    res.note = "multiplicator rings differ";
    return res;
  }
  const std::size_t n = a.degree();
  FieldPtr k = a.field();
  Rat norm = lattice_index(b, a);
  IdealLattice c = ideal_quotient(b, a);

  if (n == 2) {
    res.radius = 2 * norm;
    res.certified = true;
  } else {
    std::optional<Rat> scale;
    if (n == 4) scale = cache ? cache->certified_scale(ra.lattice) : unit_balancing_scale(ra.lattice);
    if (scale && *scale <= opts.certified_scale_cap) {
      res.radius = *scale * 4 * sqrt_upper(norm);
      res.certified = true;
    } else {
      res.radius = opts.search_scale * static_cast<unsigned long>(n) * root_upper(norm * norm, n);
      res.certified = false;
    }
  }

  auto cb = c.basis();
  RatMatrix gram = t2_gram(cb);
  IntMatrix t = lll_reduce(gram);
  std::vector<FieldElement> red;
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement e = FieldElement::zero(k);
    for (std::size_t j = 0; j < n; ++j)
      if (t(i, j) != 0) e = e + cb[j] * Rat(t(i, j));
    red.push_back(e);
  }
  RatMatrix rgram = t2_gram(red);

  std::optional<FieldElement> found;
  EnumStatus st = enumerate_short_vectors(
      rgram, res.radius,
      [&](const std::vector<Int>& y, const Rat&) {
        FieldElement x = FieldElement::zero(k);
        for (std::size_t i = 0; i < n; ++i)
          if (y[i] != 0) x = x + red[i] * Rat(y[i]);
        if (abs(x.norm()) != norm) return false;
        if (a.scaled(x) != b) return false;
        found = x;
        return true;
      },
      opts.max_nodes);

  if (found) {
    const auto& fc = found->coeffs();
    auto nz = std::find_if(fc.begin(), fc.end(), [](const Rat& v) { return v != 0; });
    if (*nz < 0) found = -*found;
    res.status = Equivalence::equivalent;
    res.witness = found;
    res.certified = true;
    return res;
  }
  if (st == EnumStatus::budget_exhausted) {
    res.status = Equivalence::indeterminate;
    res.certified = false;
    res.note = "node budget exhausted";
    return res;
  }
  if (res.certified) {
    res.status = Equivalence::not_equivalent;
  } else {
    res.status = Equivalence::indeterminate;
    res.note = "no generator within the heuristic radius";
  }
  return res;
}

}  // namespace avcyc
