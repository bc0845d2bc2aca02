#include "avcyc/weil_poly.hpp"

#include <algorithm>
#include <functional>

#include "avcyc/error.hpp"

namespace avcyc {

using poly::IntPoly;
using poly::RatPoly;

Int WeilContext::point_count() const { return avcyc::point_count(f); }

WeilContext make_context(const Int& p, unsigned r, unsigned g, const std::vector<Int>& high_first) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "p = " + p.get_str() + " is not prime");
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  if (g < 1) throw Error(ErrorCode::InvalidArgument, "g must be positive");
  if (high_first.size() != 2 * g + 1)
    throw Error(ErrorCode::WrongDegree, "expected " + std::to_string(2 * g + 1) +
                                            " coefficients for g = " + std::to_string(g) +
                                            ", got " + std::to_string(high_first.size()));
  if (high_first.front() != 1) throw Error(ErrorCode::NonMonic, "polynomial is not monic");

  WeilContext ctx;
  ctx.p = p;
  ctx.r = r;
  ctx.q = pow(p, r);
  ctx.g = g;
  ctx.f = poly::from_high_first(high_first);
  WeilCheck check = validate_weil(ctx.f, ctx.q);
  ctx.is_weil = check.ok;
  ctx.weil_reason = check.reason;
  ctx.is_ordinary = is_ordinary(ctx.f, p);
  ctx.is_irreducible = static_cast<int>(2 * g) <= kIrreducibilityDegreeCap && is_irreducible(ctx.f);
  return ctx;
}

poly::IntPoly real_weil_polynomial(const IntPoly& f, const Int& q) {
  const int n = poly::degree(f);
  const int g = n / 2;
  // Dickson-type polynomials D_k(s) = t^k + (q/t)^k with s = t + q/t.
  std::vector<IntPoly> dk(static_cast<std::size_t>(g) + 1);
  dk[0] = {2};
  if (g >= 1) dk[1] = {0, 1};
  for (int k = 2; k <= g; ++k) {
    IntPoly next = poly::mul(IntPoly{0, 1}, dk[static_cast<std::size_t>(k - 1)]);
    const IntPoly& prev = dk[static_cast<std::size_t>(k - 2)];
    next.resize(std::max(next.size(), prev.size()));
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= q * prev[i];
    poly::trim(next);
    dk[static_cast<std::size_t>(k)] = std::move(next);
  }
  IntPoly h(static_cast<std::size_t>(g) + 1);
  h[0] = f[static_cast<std::size_t>(g)];
  for (int k = 1; k <= g; ++k) {
    const Int& c = f[static_cast<std::size_t>(g + k)];
    const IntPoly& d = dk[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < d.size(); ++i) h[i] += c * d[i];
  }
  poly::trim(h);
  return h;
}

namespace {

// Sign of P(e * 2 sqrt(q)), e = +-1, computed as sign(A + B sqrt(q)).
int sign_at_endpoint(const RatPoly& p, const Int& q, int e) {
  const Rat four_q = Rat(4 * q);
  Rat a = 0, b = 0, pw = 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k % 2 == 0) {
      a += p[k] * pw;
    } else {
      b += p[k] * pw * 2 * e;
      pw *= four_q;
    }
  }
  const int sa = sgn(a), sb = sgn(b);
  if (sa == 0) return sb;
  if (sb == 0) return sa;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2 q.
  Rat lhs = a * a, rhs = b * b * Rat(q);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

int sign_variations(const std::vector<RatPoly>& seq, const Int& q, int e) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    int s = sign_at_endpoint(p, q, e);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int count_roots_in_weil_interval(const RatPoly& squarefree, const Int& q) {
  RatPoly p = squarefree;
  poly::trim(p);
  int endpoint_roots = 0;
  if (is_square(q)) {
    const Int w = 2 * isqrt(q);
    for (int e : {1, -1}) {
      Rat x(e * w);
      if (poly::degree(p) >= 1 && poly::eval(p, x) == 0) {
        p = poly::divmod(p, RatPoly{-x, 1}).quotient;
        ++endpoint_roots;
      }
    }
  } else if (poly::degree(p) >= 1 && sign_at_endpoint(p, q, 1) == 0) {
    // An irrational endpoint is a root only together with its conjugate.
    p = poly::divmod(p, RatPoly{Rat(-4 * q), 0, 1}).quotient;
    endpoint_roots += 2;
  }
  if (poly::degree(p) <= 0) return endpoint_roots;

  std::vector<RatPoly> seq{p, poly::derivative(p)};
  while (poly::degree(seq.back()) > 0) {
    RatPoly r = poly::divmod(seq[seq.size() - 2], seq.back()).remainder;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return endpoint_roots + sign_variations(seq, q, -1) - sign_variations(seq, q, 1);
}

WeilCheck validate_weil(const IntPoly& f, const Int& q) {
  const int n = poly::degree(f);
  if (n < 2 || n % 2 != 0 || f[static_cast<std::size_t>(n)] != 1) return {false, "degree"};
  const unsigned g = static_cast<unsigned>(n / 2);
  if (f[0] != pow(q, g)) return {false, "constant_term"};
  for (unsigned k = 0; k < g; ++k)
    if (f[k] != pow(q, g - k) * f[2 * g - k]) return {false, "not_symmetric"};

  IntPoly h = real_weil_polynomial(f, q);
  RatPoly hr = poly::to_rat(h);
  RatPoly sf = poly::divmod(hr, poly::gcd(hr, poly::derivative(hr))).quotient;
  int roots = count_roots_in_weil_interval(sf, q);
  if (roots != poly::degree(sf)) return {false, "root_size"};
  return {true, ""};
}

bool is_ordinary(const IntPoly& f, const Int& p) {
  const int n = poly::degree(f);
  if (n < 0 || n % 2 != 0) return false;
  return gcd(f[static_cast<std::size_t>(n / 2)], p) == 1;
}

Int point_count(const IntPoly& f) { return poly::eval(f, Int(1)); }

namespace {

// Smallest R with R^n > sum |c_i| R^i: every complex root has |z| < R.
Int root_bound(const IntPoly& f) {
  const int n = poly::degree(f);
  for (Int r = 1;; r += 1) {
    Int rhs = 0, pw = 1;
    for (int i = 0; i < n; ++i) {
      rhs += abs(f[static_cast<std::size_t>(i)]) * pw;
      pw *= r;
    }
    if (pw > rhs) return r;
  }
}

Int binomial(int n, int k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::vector<Int> signed_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& d : divisors(n)) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

// Searches for a monic integer factor of degree d (2 <= d) using the values
// at 0, 1, -1 (which divide the corresponding values of f) plus root-size
// bounds on the remaining coefficients.
bool has_factor_of_degree(const IntPoly& f, int d) {
  const Int bound = root_bound(f);
  std::vector<Int> cbound(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) cbound[static_cast<std::size_t>(k)] = binomial(d, k) * pow(bound, static_cast<unsigned long>(d - k));

  std::vector<int> odd_idx, even_idx;
  for (int k = 1; k < d; ++k) (k % 2 ? odd_idx : even_idx).push_back(k);

  const Int f0 = f[0], f1 = poly::eval(f, Int(1)), fm1 = poly::eval(f, Int(-1));
  IntPoly g(static_cast<std::size_t>(d) + 1);
  g[static_cast<std::size_t>(d)] = 1;

  // Assign the indices in `idx` so that their sum equals `target`.
  std::function<bool(const std::vector<int>&, std::size_t, Int, const std::function<bool()>&)>
      assign = [&](const std::vector<int>& idx, std::size_t pos, Int target,
                   const std::function<bool()>& next) -> bool {
    if (idx.empty()) return target == 0 && next();
    const int k = idx[pos];
    const Int& b = cbound[static_cast<std::size_t>(k)];
    if (pos + 1 == idx.size()) {
      if (abs(target) > b) return false;
      g[static_cast<std::size_t>(k)] = target;
      return next();
    }
    for (Int v = -b; v <= b; ++v) {
      g[static_cast<std::size_t>(k)] = v;
      if (assign(idx, pos + 1, target - v, next)) return true;
    }
    return false;
  };

  for (const Int& g0 : signed_divisors(f0)) {
    if (abs(g0) > cbound[0]) continue;
    g[0] = g0;
    for (const Int& v1 : signed_divisors(f1)) {
      for (const Int& vm1 : signed_divisors(fm1)) {
        const Int lead_alt = (d % 2 == 0) ? 1 : -1;
        Int s_all = v1 - 1 - g0;
        Int s_alt = vm1 - lead_alt - g0;  // even-index sum minus odd-index sum
        if ((s_all + s_alt) % 2 != 0) continue;
        Int even_sum = (s_all + s_alt) / 2;
        Int odd_sum = (s_all - s_alt) / 2;
        bool found = assign(odd_idx, 0, odd_sum, [&] {
          return assign(even_idx, 0, even_sum, [&] { return poly::divides_monic(g, f); });
        });
        if (found) return true;
      }
    }
  }
  return false;
}

std::vector<long> small_primes() {
  std::vector<long> ps;
  for (long n = 2; ps.size() < 25; ++n) {
    bool prime = true;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) prime = false;
    if (prime) ps.push_back(n);
  }
  return ps;
}

}  // namespace

bool is_irreducible(const IntPoly& f_in) {
  IntPoly f = f_in;
  poly::trim(f);
  const int n = poly::degree(f);
  if (n > kIrreducibilityDegreeCap)
    throw Error(ErrorCode::Capability, "irreducibility test limited to degree <= " +
                                           std::to_string(kIrreducibilityDegreeCap));
  if (n < 1) return false;
  if (f[static_cast<std::size_t>(n)] != 1)
    throw Error(ErrorCode::NonMonic, "irreducibility test expects a monic polynomial");
  if (n == 1) return true;
  if (f[0] == 0) return false;

  RatPoly fr = poly::to_rat(f);
  if (poly::degree(poly::gcd(fr, poly::derivative(fr))) > 0) return false;

  // Rational roots are integer divisors of f(0).
  for (const auto& d : divisors(f[0]))
    if (poly::eval(f, d) == 0 || poly::eval(f, Int(-d)) == 0) return false;

  // Degree patterns mod small primes restrict the possible factor degrees.
  std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
  for (long p : small_primes()) {
    if (!poly::squarefree_mod(f, p)) continue;
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    for (int deg : poly::factor_degrees_mod(f, p))
      for (int s = n; s >= deg; --s)
        if (sums[static_cast<std::size_t>(s - deg)]) sums[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s <= n; ++s) possible[static_cast<std::size_t>(s)] = possible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
  }
  for (int d = 2; d <= n / 2; ++d) {
    if (!possible[static_cast<std::size_t>(d)] && !possible[static_cast<std::size_t>(n - d)]) continue;
    if (has_factor_of_degree(f, d)) return false;
  }
  return true;
}

std::vector<WeilContext> enumerate_weil_contexts(const Int& p, unsigned r, unsigned g,
                                                 const WeilFilter& filter, long q_cap) {
  if (g < 1 || g > 2)
    throw Error(ErrorCode::Capability, "enumeration supports g in {1, 2}, got g = " + std::to_string(g));
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "p = " + p.get_str() + " is not prime");
  const Int q = pow(p, r);
  if (q > q_cap)
    throw Error(ErrorCode::Capability, "q = " + q.get_str() + " exceeds the cap " + std::to_string(q_cap));

  // Weil polynomials satisfy a_{2g-i} = q^{g-i} a_i, so only a_1..a_g are free.
  // |a_i| <= C(2g, i) q^{i/2}, enlarged to an integer box.
  std::vector<Int> bound(g + 1);
  for (unsigned i = 1; i <= g; ++i) {
    Int b = binomial(static_cast<int>(2 * g), static_cast<int>(i));
    bound[i] = isqrt(b * b * pow(q, i)) + 1;
  }
  std::vector<WeilContext> out;
  std::vector<Int> free(g + 1);
  std::function<void(unsigned)> rec = [&](unsigned i) {
    if (i > g) {
      std::vector<Int> hf(2 * g + 1);
      hf[0] = 1;
      for (unsigned k = 1; k <= g; ++k) hf[k] = free[k];
      for (unsigned k = 0; k < g; ++k) hf[2 * g - k] = pow(q, g - k) * hf[k];
      IntPoly f = poly::from_high_first(hf);
      if (!validate_weil(f, q).ok) return;
      if (filter.require_ordinary && !is_ordinary(f, p)) return;
      WeilContext ctx = make_context(p, r, g, hf);
      if (filter.require_irreducible && !ctx.is_irreducible) return;
      out.push_back(std::move(ctx));
      return;
    }
    for (Int a = -bound[i]; a <= bound[i]; ++a) {
      free[i] = a;
      rec(i + 1);
    }
  };
  rec(1);
  std::sort(out.begin(), out.end(), [](const WeilContext& a, const WeilContext& b) {
    return a.coefficients_high_first() < b.coefficients_high_first();
  });
  return out;
}

}  // namespace avcyc
