#include "avcyc/short_vectors.hpp"

#include <cmath>

#include "avcyc/error.hpp"

namespace avcyc {

namespace {

RatMatrix congruence(const IntMatrix& t, const RatMatrix& g) {
  RatMatrix tr = to_rational(t);
  return tr * g * tr.transpose();
}

struct GramSchmidt {
  RatMatrix mu;
  std::vector<Rat> b;  // squared lengths of the orthogonalized vectors
};

GramSchmidt gram_schmidt(const RatMatrix& g) {
  const std::size_t n = g.rows();
  GramSchmidt gs{RatMatrix(n, n), std::vector<Rat>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rat s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= gs.mu(j, k) * gs.mu(i, k) * gs.b[k];
      gs.mu(i, j) = s / gs.b[j];
    }
    Rat s = g(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= gs.mu(i, k) * gs.mu(i, k) * gs.b[k];
    if (s <= 0) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not positive definite");
    gs.b[i] = s;
  }
  return gs;
}

Int round_half_up(const Rat& x) { return floor_of(x + Rat(1, 2)); }

}  // namespace

IntMatrix lll_reduce(const RatMatrix& gram, const Rat& delta) {
  const std::size_t n = gram.rows();
  IntMatrix t = IntMatrix::identity(n);
  if (n < 2) return t;
  RatMatrix g = gram;
  GramSchmidt gs = gram_schmidt(g);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Int r = round_half_up(gs.mu(k, jj));
      if (r == 0) continue;
      for (std::size_t c = 0; c < n; ++c) t(k, c) -= r * t(jj, c);
      g = congruence(t, gram);
      gs = gram_schmidt(g);
    }
    const Rat& m = gs.mu(k, k - 1);
    if (gs.b[k] >= (delta - m * m) * gs.b[k - 1]) {
      ++k;
    } else {
      t.swap_rows(k, k - 1);
      g = congruence(t, gram);
      gs = gram_schmidt(g);
      k = (k > 1) ? k - 1 : 1;
    }
  }
  return t;
}

namespace {

struct Enumerator {
  std::size_t n;
  RatMatrix q;  // q(i,i): pivots; q(i,j), j > i: coefficients
  const std::function<bool(const std::vector<Int>&, const Rat&)>& visit;
  unsigned long max_nodes;
  unsigned long nodes = 0;
  std::vector<Int> x;
  Rat radius;
  bool stopped = false;
  bool exhausted = false;

  bool feasible(const Int& v, const Rat& c, const Rat& s) const {
    Rat d = Rat(v) - c;
    return d * d <= s;
  }

  // level i, remaining budget; all_higher_zero tracks the sign normalization.
  void run(std::size_t i, const Rat& budget, bool all_higher_zero) {
    if (stopped || exhausted) return;
    Rat c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= q(i, j) * x[j];
    Rat s = budget / q(i, i);
    double r = std::sqrt(std::max(0.0, s.get_d()));
    double cd = c.get_d();
    Int lo(std::floor(cd - r));
    Int hi(std::ceil(cd + r));
    while (feasible(lo - 1, c, s)) lo -= 1;
    while (lo <= hi && !feasible(lo, c, s)) lo += 1;
    while (feasible(hi + 1, c, s)) hi += 1;
    while (hi >= lo && !feasible(hi, c, s)) hi -= 1;
    if (all_higher_zero && lo < 0) lo = 0;
    for (Int v = lo; v <= hi; ++v) {
      if (++nodes > max_nodes) {
        exhausted = true;
        return;
      }
      x[i] = v;
      Rat d = Rat(v) - c;
      Rat rest = budget - q(i, i) * d * d;
      bool zero_so_far = all_higher_zero && v == 0;
      if (i == 0) {
        if (zero_so_far) continue;
        if (visit(x, radius - rest)) {
          stopped = true;
          return;
        }
      } else {
        run(i - 1, rest, zero_so_far);
      }
      if (stopped || exhausted) return;
    }
    x[i] = 0;
  }
};

}  // namespace

EnumStatus enumerate_short_vectors(
    const RatMatrix& gram, const Rat& radius,
    const std::function<bool(const std::vector<Int>& x, const Rat& length)>& visit,
    unsigned long max_nodes) {
  const std::size_t n = gram.rows();
  if (n == 0 || radius < 0) return EnumStatus::complete;
  // q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
  RatMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat d = gram(i, i);
    for (std::size_t k = 0; k < i; ++k) d -= q(k, k) * q(k, i) * q(k, i);
    if (d <= 0) throw Error(ErrorCode::InvalidArgument, "Gram matrix is not positive definite");
    q(i, i) = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat s = gram(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= q(k, k) * q(k, i) * q(k, j);
      q(i, j) = s / d;
    }
  }
  Enumerator e{n, q, visit, max_nodes, 0, std::vector<Int>(n), radius};
  e.run(n - 1, radius, true);
  if (e.exhausted) return EnumStatus::budget_exhausted;
  return e.stopped ? EnumStatus::stopped : EnumStatus::complete;
}

}  // namespace avcyc
