#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "avcyc/weil_poly.hpp"

using namespace avcyc;
using poly::IntPoly;

namespace {

std::vector<Int> hf(std::initializer_list<long> c) { return std::vector<Int>(c.begin(), c.end()); }

// Independent root-size test for g = 2: t^4 + a t^3 + b t^2 + q a t + q^2 is a
// q-Weil polynomial iff a^2 <= 16q, 4b <= a^2 + 8q and 2|a|sqrt(q) <= b + 2q.
bool quartic_weil_oracle(const Int& a, const Int& b, const Int& q) {
  if (a * a > 16 * q) return false;
  if (4 * b > a * a + 8 * q) return false;
  Int rhs = b + 2 * q;
  if (rhs < 0) return false;
  return 4 * a * a * q <= rhs * rhs;
}

// Trial division by every monic integer polynomial of degree 1..n/2 within
// the Cauchy coefficient bound.
bool has_factor_oracle(const IntPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  Int big = 0;
  for (const auto& c : f) big = std::max(big, Int(abs(c)));
  Int r = big + 1;
  auto divides = [&](const IntPoly& g) {
    IntPoly rem = f;
    const int d = static_cast<int>(g.size()) - 1;
    for (int k = n; k >= d; --k) {
      Int c = rem[k];
      if (c == 0) continue;
      for (int j = 0; j <= d; ++j) rem[k - d + j] -= c * g[j];
    }
    for (int k = 0; k < d; ++k)
      if (rem[k] != 0) return false;
    return true;
  };
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<Int> bound(d);
    for (int k = 0; k < d; ++k) {
      Int binom;
      mpz_bin_uiui(binom.get_mpz_t(), d, k);
      bound[k] = binom * pow(r, d - k);
    }
    IntPoly g(d + 1);
    g[d] = 1;
    std::function<bool(int)> rec = [&](int k) {
      if (k == d) return divides(g);
      for (Int v = -bound[k]; v <= bound[k]; ++v) {
        g[k] = v;
        if (k == 0 && (v == 0 ? f[0] != 0 : f[0] % v != 0)) continue;
        if (rec(k + 1)) return true;
      }
      return false;
    };
    if (rec(0)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("make_context examples") {
  WeilContext a = make_context(2, 1, 1, hf({1, 1, 2}));
  CHECK(a.is_weil);
  CHECK(a.is_ordinary);
  CHECK(a.is_irreducible);
  CHECK(a.q == 2);
  WeilContext b = make_context(5, 1, 1, hf({1, -2, 5}));
  CHECK(b.is_weil);
  CHECK(b.is_ordinary);
  CHECK(b.is_irreducible);
  WeilContext c = make_context(2, 1, 1, hf({1, 0, 2}));
  CHECK(c.is_weil);
  CHECK_FALSE(c.is_ordinary);
  CHECK(c.poly_text() == "1,0,2");
}

TEST_CASE("make_context rejections carry specific codes") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code_of([] { make_context(2, 1, 1, hf({2, 1, 2})); }) == ErrorCode::NonMonic);
  CHECK(code_of([] { make_context(2, 1, 1, hf({1, 1})); }) == ErrorCode::WrongDegree);
  CHECK(code_of([] { make_context(4, 1, 1, hf({1, 1, 4})); }) == ErrorCode::NotPrime);
  // wrong constant term is a flag, not an exception
  WeilContext bad = make_context(2, 1, 1, hf({1, 1, 3}));
  CHECK_FALSE(bad.is_weil);
  CHECK(bad.weil_reason == "constant_term");
}

TEST_CASE("validate_weil examples") {
  CHECK(validate_weil(poly::from_high_first(hf({1, 1, 2})), 2).ok);
  CHECK(validate_weil(poly::from_high_first(hf({1, -2, 5})), 5).ok);
  WeilCheck bad = validate_weil(poly::from_high_first(hf({1, -5, 2})), 2);
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason == "root_size");
  // endpoint roots: (t - sqrt q)^2 type polynomials
  CHECK(validate_weil(poly::from_high_first(hf({1, -4, 4})), 4).ok);
  CHECK(validate_weil(poly::from_high_first(hf({1, 4, 4})), 4).ok);
  CHECK(validate_weil(poly::from_high_first(hf({1, 0, -4, 0, 4})), 2).ok);  // (t^2 - 2)^2
  CHECK_FALSE(validate_weil(poly::from_high_first(hf({1, 1, 1, 3, 4})), 2).ok);
  CHECK(validate_weil(poly::from_high_first(hf({1, 1, 1, 3, 4})), 2).reason == "not_symmetric");
}

TEST_CASE("real Weil polynomial") {
  CHECK(real_weil_polynomial(poly::from_high_first(hf({1, 1, 2})), 2) == IntPoly{1, 1});
  CHECK(real_weil_polynomial(poly::from_high_first(hf({1, -2, 5})), 5) == IntPoly{-2, 1});
  // t^4 + a t^3 + b t^2 + qa t + q^2 -> s^2 + a s + (b - 2q)
  CHECK(real_weil_polynomial(poly::from_high_first(hf({1, 1, 2, 2, 4})), 2) == IntPoly{-2, 1, 1});
}

TEST_CASE("g = 1 validation matches the Hasse bound") {
  for (long q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    for (long a = -10; a <= 10; ++a) {
      IntPoly f{q, a, 1};
      CHECK_MESSAGE(validate_weil(f, q).ok == (a * a <= 4 * q), "q=" << q << " a=" << a);
    }
  }
}

TEST_CASE("g = 2 validation matches the quartic inequalities") {
  for (long q : {2, 3, 4, 5}) {
    for (long a = -9; a <= 9; ++a)
      for (long b = -12; b <= 30; ++b) {
        IntPoly f{q * q, q * a, b, a, 1};
        CHECK_MESSAGE(validate_weil(f, q).ok == quartic_weil_oracle(a, b, q),
                      "q=" << q << " a=" << a << " b=" << b);
      }
  }
}

TEST_CASE("is_ordinary examples") {
  CHECK(is_ordinary(poly::from_high_first(hf({1, 1, 2})), 2));
  CHECK_FALSE(is_ordinary(poly::from_high_first(hf({1, 0, 2})), 2));
  CHECK_FALSE(is_ordinary(poly::from_high_first(hf({1, 1, 2, 2, 4})), 2));
}

TEST_CASE("point_count examples") {
  CHECK(point_count(poly::from_high_first(hf({1, 1, 2}))) == 4);
  CHECK(point_count(poly::from_high_first(hf({1, -2, 5}))) == 4);
  CHECK(point_count(poly::from_high_first(hf({1, 3, 4}))) == 8);
}

TEST_CASE("is_irreducible examples") {
  CHECK(is_irreducible(poly::from_high_first(hf({1, 1, 2}))));
  CHECK_FALSE(is_irreducible(poly::from_high_first(hf({1, 2, 5, 4, 4}))));  // (t^2+t+2)^2
  CHECK_FALSE(is_irreducible(poly::from_high_first(hf({1, -4, 4}))));
  IntPoly nine(10);
  nine[9] = 1;
  nine[0] = 2;
  CHECK_THROWS_AS(is_irreducible(nine), Error);
}

TEST_CASE("irreducibility agrees with trial division") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-4, 4);
  int reducible = 0;
  for (int t = 0; t < 400; ++t) {
    int n = 2 + t % 3;
    IntPoly f(n + 1);
    f[n] = 1;
    for (int k = 0; k < n; ++k) f[k] = coef(rng);
    if (t % 5 == 0) {  // products of two small factors
      IntPoly a{coef(rng), 1}, b(n);
      b[n - 1] = 1;
      for (int k = 0; k + 1 < n; ++k) b[k] = coef(rng);
      f = poly::mul(a, b);
    }
    bool expected = !has_factor_oracle(f);
    if (!expected) ++reducible;
    CHECK_MESSAGE(is_irreducible(f) == expected, poly::format_high_first(f));
  }
  CHECK(reducible > 50);
}

TEST_CASE("irreducibility of Weil quartics agrees with trial division") {
  for (long q : {2, 3}) {
    for (const auto& ctx : enumerate_weil_contexts(q, 1, 2, {})) {
      CHECK_MESSAGE(ctx.is_irreducible == !has_factor_oracle(ctx.f), ctx.poly_text());
    }
  }
}

TEST_CASE("enumerate_weil_contexts examples") {
  auto texts = [](const std::vector<WeilContext>& v) {
    std::set<std::string> s;
    for (const auto& c : v) s.insert(c.poly_text());
    return s;
  };
  auto ord = texts(enumerate_weil_contexts(2, 1, 1, {true, true}));
  CHECK(ord.count("1,1,2"));
  CHECK(ord.count("1,-1,2"));
  auto all = texts(enumerate_weil_contexts(2, 1, 1, {}));
  CHECK(all.count("1,2,2"));
  CHECK(all.count("1,-2,2"));
  for (const auto& c : enumerate_weil_contexts(3, 1, 1, {true, false})) CHECK(gcd(c.f[1], 3) == 1);
  CHECK_THROWS_AS(enumerate_weil_contexts(2, 1, 3, {}), Error);
  CHECK_THROWS_AS(enumerate_weil_contexts(2, 5, 1, {}), Error);
}

TEST_CASE("g = 1 enumeration equals brute force over the Hasse bound") {
  for (auto [p, r] : std::vector<std::pair<long, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    long q = 1;
    for (unsigned i = 0; i < r; ++i) q *= p;
    for (WeilFilter flt : {WeilFilter{false, false}, WeilFilter{true, false}, WeilFilter{true, true}}) {
      std::vector<std::vector<Int>> expected;
      for (long a = -2 * q; a <= 2 * q; ++a) {
        if (a * a > 4 * q) continue;
        if (flt.require_ordinary && a % p == 0) continue;
        if (flt.require_irreducible) {
          long disc = a * a - 4 * q;
          bool square = disc >= 0 && is_square(Int(disc));
          if (square) continue;
        }
        expected.push_back({1, a, q});
      }
      std::sort(expected.begin(), expected.end());
      std::vector<std::vector<Int>> got;
      for (const auto& c : enumerate_weil_contexts(p, r, 1, flt)) got.push_back(c.coefficients_high_first());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("every enumerated context satisfies f(0) = q^g and f(1) > 0") {
  for (unsigned g : {1u, 2u})
    for (long p : {2, 3}) {
      auto v = enumerate_weil_contexts(p, 1, g, {});
      CHECK(std::is_sorted(v.begin(), v.end(), [](const WeilContext& a, const WeilContext& b) {
        return a.coefficients_high_first() < b.coefficients_high_first();
      }));
      for (const auto& c : v) {
        CHECK(c.f[0] == pow(Int(p), g));
        CHECK(c.point_count() > 0);
        CHECK(c.is_weil);
      }
    }
}
