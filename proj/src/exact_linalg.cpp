#include "avcyc/exact_linalg.hpp"

#include <algorithm>
#include <random>

namespace avcyc {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

std::vector<Rat> row_times(const std::vector<Rat>& v, const RatMatrix& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::InvalidArgument, "vector/matrix shape mismatch");
  std::vector<Rat> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

Int determinant(const IntMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

namespace {

IntMatrix minor_matrix(const IntMatrix& a, std::size_t row, std::size_t col) {
  const std::size_t n = a.rows();
  IntMatrix m(n - 1, n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == col) continue;
      m(mi, mj++) = a(i, j);
    }
    ++mi;
  }
  return m;
}

}  // namespace

IntMatrix cofactor_matrix(const IntMatrix& a) {
  if (!a.square() || a.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "cofactor of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 1) return IntMatrix{{1}};
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int d = determinant(minor_matrix(a, i, j));
      c(i, j) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  return c;
}

Int content(const IntMatrix& a) {
  Int g = 0;
  for (const auto& x : a.data()) g = gcd(g, x);
  return g;
}

Int tau(const IntMatrix& a) { return content(cofactor_matrix(a)); }

bool is_unimodular(const IntMatrix& u) {
  if (!u.square()) return false;
  return abs(determinant(u)) == 1;
}

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfResult res{a, IntMatrix::identity(m), IntMatrix::identity(n), {}};
  IntMatrix& s = res.s;
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    bool finished = false;
    while (!finished) {
      // Smallest nonzero |entry| in the active block, row-major tie-break.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (s(i, j) == 0) continue;
          if (pi == m || abs(s(i, j)) < abs(s(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;  // active block is zero
      s.swap_rows(t, pi);
      res.u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      res.v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Int qt = s(i, t) / s(t, t);
        add_row_multiple(s, i, t, -qt);
        add_row_multiple(res.u, i, t, -qt);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Int qt = s(t, j) / s(t, t);
        add_col_multiple(s, j, t, -qt);
        add_col_multiple(res.v, j, t, -qt);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the active block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad != m) {
        add_row_multiple(s, t, bad, 1);
        add_row_multiple(res.u, t, bad, 1);
        continue;
      }
      finished = true;
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(res.u, t);
    }
  }
  res.invariant_factors.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) res.invariant_factors.push_back(s(t, t));
  return res;
}

namespace {

HnfResult hnf_impl(const IntMatrix& a, bool track) {
  const std::size_t m = a.rows(), n = a.cols();
  HnfResult res{a, track ? IntMatrix::identity(m) : IntMatrix(), 1, 0};
  IntMatrix& h = res.h;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool has_pivot = false;
    while (true) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        if (p == m || abs(h(i, c)) < abs(h(p, c))) p = i;
      }
      if (p == m) break;
      has_pivot = true;
      h.swap_rows(r, p);
      if (track) res.u.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int qt = floor_div(h(i, c), h(r, c));
        add_row_multiple(h, i, r, -qt);
        if (track) add_row_multiple(res.u, i, r, -qt);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      if (track) negate_row(res.u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int qt = floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, -qt);
      if (track) add_row_multiple(res.u, i, r, -qt);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

}  // namespace

HnfResult hnf_with_transform(const IntMatrix& a) { return hnf_impl(a, true); }

IntMatrix hnf_rows(const IntMatrix& a, std::size_t* rank) {
  HnfResult res = hnf_impl(a, false);
  if (rank) *rank = res.rank;
  return res.h;
}

HnfResult hnf_with_transform(const RatMatrix& a) {
  Int den = 1;
  for (const auto& x : a.data()) den = lcm(den, x.get_den());
  IntMatrix scaled(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rat v = a(i, j) * den;
      scaled(i, j) = v.get_num();
    }
  HnfResult res = hnf_with_transform(scaled);
  res.denominator = den;
  return res;
}

HnfResult hermite_normal_form(const RatMatrix& a) {
  HnfResult res = hnf_with_transform(a);
  if (res.rank != a.rows()) throw Error(ErrorCode::DegenerateLattice, "degenerate lattice");
  return res;
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
  HnfResult res = hnf_with_transform(a);
  IntMatrix k(a.rows() - res.rank, a.rows());
  for (std::size_t i = res.rank; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) k(i - res.rank, j) = res.u(i, j);
  return k;
}

std::optional<RatMatrix> try_inverse(const RatMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rat piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

RatMatrix inverse(const RatMatrix& a) {
  auto inv = try_inverse(a);
  if (!inv) throw Error(ErrorCode::InvalidArgument, "singular matrix");
  return *inv;
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

std::vector<Rat> charpoly(const RatMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidArgument, "charpoly of non-square matrix");
  // Faddeev-LeVerrier.
  const std::size_t n = a.rows();
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  RatMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    RatMatrix am = a * mk;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return c;
}

std::vector<Int> charpoly(const IntMatrix& a) {
  auto c = charpoly(to_rational(a));
  std::vector<Int> out;
  out.reserve(c.size());
  for (const auto& x : c) out.push_back(x.get_num());
  return out;
}

std::optional<IntMatrix> to_integer(const RatMatrix& a) {
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j))) return std::nullopt;
      m(i, j) = a(i, j).get_num();
    }
  return m;
}

IntMatrix random_unimodular(std::size_t n, unsigned steps, int max_entry, unsigned long seed) {
  std::mt19937_64 rng(seed);
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  const Int bound = max_entry;
  for (unsigned s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    switch (kind(rng)) {
      case 0:
      case 1: {
        if (i == j) break;
        int k = (kind(rng) % 2 == 0) ? 1 : -1;
        IntMatrix trial = u;
        add_row_multiple(trial, i, j, k);
        bool ok = true;
        for (const auto& x : trial.data())
          if (abs(x) > bound) ok = false;
        if (ok) u = std::move(trial);
        break;
      }
      case 2:
        u.swap_rows(i, j);
        break;
      default:
        negate_row(u, i);
        break;
    }
  }
  return u;
}

}  // namespace avcyc
