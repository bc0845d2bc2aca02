#include <random>

#include "doctest.h"
#include "avcyc/exact_linalg.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avcyc;

namespace {

IntMatrix int_inverse(const IntMatrix& u) {
  auto inv = to_integer(inverse(to_rational(u)));
  REQUIRE(inv.has_value());
  return *inv;
}

bool is_diagonal_chain(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < n) {
      if (s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
      if (s(i, i) != 0 && s(i + 1, i + 1) % s(i, i) != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("determinant examples") {
  CHECK(determinant(IntMatrix::identity(2)) == 1);
  CHECK(determinant(IntMatrix{{0, -2}, {1, -1}}) == 2);
  CHECK(determinant(IntMatrix{{1, 2}, {-1, 2}}) == 4);
  CHECK(determinant(IntMatrix{{5}}) == 5);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("determinant agrees with Laplace expansion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 5;
    IntMatrix a = gen::random_matrix(rng, n, 9);
    CHECK(determinant(a) == oracle::laplace_det(a));
    CHECK(determinant(to_rational(a)) == Rat(oracle::laplace_det(a)));
  }
}

TEST_CASE("cofactor examples") {
  CHECK(cofactor_matrix(IntMatrix::identity(2)) == IntMatrix::identity(2));
  CHECK(cofactor_matrix(IntMatrix{{0, -2}, {1, -1}}) == IntMatrix{{-1, -1}, {2, 0}});
  CHECK(cofactor_matrix(IntMatrix{{0, 2}, {-2, 0}}) == IntMatrix{{0, 2}, {-2, 0}});
  CHECK(cofactor_matrix(IntMatrix{{7}}) == IntMatrix{{1}});
}

TEST_CASE("cofactor identities on random matrices") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + t % 4;
    IntMatrix a = gen::random_matrix(rng, n, 6);
    IntMatrix c = cofactor_matrix(a);
    CHECK(c == oracle::cofactor(a));
    CHECK(a * c.transpose() == IntMatrix::identity(n).scaled(determinant(a)));
  }
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 3 + t % 2;
    IntMatrix a = gen::random_matrix(rng, n, 5);
    IntMatrix b = gen::random_matrix(rng, n, 5);
    CHECK(cofactor_matrix(a * b) == cofactor_matrix(a) * cofactor_matrix(b));
    // the adjugate reverses the order
    CHECK(cofactor_matrix(a * b).transpose() ==
          cofactor_matrix(b).transpose() * cofactor_matrix(a).transpose());
  }
}

TEST_CASE("tau examples") {
  CHECK(tau(IntMatrix::identity(2)) == 1);
  CHECK(tau(IntMatrix{{0, 2}, {-2, 0}}) == 2);
  CHECK(tau(IntMatrix{{1, 2}, {-1, 2}}) == 1);
  CHECK(tau(IntMatrix{{0, 0}, {0, 0}}) == 0);
}

TEST_CASE("tau is a conjugacy invariant and equals the (n-1)-st determinantal divisor") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix a = gen::random_matrix(rng, n, 6);
    IntMatrix u = random_unimodular(n, 12, 5, rng());
    CHECK(tau(u * a * int_inverse(u)) == tau(a));
    CHECK(tau(a) == oracle::determinantal_divisor(a, n - 1));
  }
}

TEST_CASE("smith normal form examples") {
  auto f = [](const IntMatrix& a) { return smith_normal_form(a).invariant_factors; };
  CHECK(f(IntMatrix::identity(2)) == std::vector<Int>{1, 1});
  CHECK(f(IntMatrix{{0, 2}, {-2, 0}}) == std::vector<Int>{2, 2});
  CHECK(f(IntMatrix{{1, 2}, {-1, 2}}) == std::vector<Int>{1, 4});
  CHECK(f(IntMatrix{{1, 5}, {-1, -1}}) == std::vector<Int>{1, 4});
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 4;
    IntMatrix a = gen::random_matrix(rng, n, t % 3 == 0 ? 2 : 8);
    if (t % 7 == 0 && n > 1) a.set_row(n - 1, a.row(0));  // force singular cases
    SnfResult r = smith_normal_form(a);
    CHECK(r.u * a * r.v == r.s);
    CHECK(is_unimodular(r.u));
    CHECK(is_unimodular(r.v));
    CHECK(is_diagonal_chain(r.s));
    CHECK(r.invariant_factors == oracle::invariant_factors(a));
    Int prod = 1;
    for (const auto& s : r.invariant_factors) prod *= s;
    CHECK(prod == abs(determinant(a)));
    // determinism
    CHECK(smith_normal_form(a).s == r.s);
    CHECK(smith_normal_form(a).u == r.u);
  }
}

TEST_CASE("hermite normal form examples") {
  HnfResult id = hermite_normal_form(to_rational(IntMatrix::identity(2)));
  CHECK(id.h == IntMatrix::identity(2));
  CHECK(id.u == IntMatrix::identity(2));
  CHECK(hermite_normal_form(to_rational(IntMatrix{{2, 0}, {0, 2}})).h == IntMatrix{{2, 0}, {0, 2}});
  HnfResult r = hermite_normal_form(to_rational(IntMatrix{{1, 2}, {-1, 2}}));
  CHECK(r.h == IntMatrix{{1, 2}, {0, 4}});
  CHECK(is_unimodular(r.u));
  CHECK(r.u * IntMatrix{{1, 2}, {-1, 2}} == r.h);
  CHECK_THROWS_AS(hermite_normal_form(to_rational(IntMatrix{{1, 2}, {2, 4}})), Error);
}

TEST_CASE("hermite normal form with a common denominator") {
  RatMatrix a(2, 2);
  a(0, 0) = Rat(1, 2);
  a(0, 1) = 0;
  a(1, 0) = 0;
  a(1, 1) = Rat(1, 3);
  HnfResult r = hermite_normal_form(a);
  CHECK(r.denominator == 6);
  CHECK(r.h == IntMatrix{{3, 0}, {0, 2}});
}

TEST_CASE("hermite normal form is canonical under re-basing") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + t % 4;
    IntMatrix a = gen::random_matrix(rng, n, 7);
    if (determinant(a) == 0) continue;
    HnfResult r = hermite_normal_form(to_rational(a));
    CHECK(r.u * a == r.h);
    CHECK(is_unimodular(r.u));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r.h(i, i) > 0);
      for (std::size_t j = 0; j < i; ++j) CHECK(r.h(i, j) == 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(r.h(k, i) >= 0);
        CHECK(r.h(k, i) < r.h(i, i));
      }
    }
    IntMatrix u = random_unimodular(n, 15, 5, rng());
    CHECK(hermite_normal_form(to_rational(u * a)).h == r.h);
    // different lattice, different form
    IntMatrix b = a;
    for (std::size_t j = 0; j < n; ++j) b(0, j) *= 2;
    CHECK(hermite_normal_form(to_rational(b)).h != r.h);
  }
}

TEST_CASE("rank-deficient hnf and integer kernel") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = gen::random_rect(rng, 5, 3, 6);
    HnfResult r = hnf_with_transform(a);
    CHECK(r.u * a == r.h);
    CHECK(is_unimodular(r.u));
    CHECK(r.rank == rank(to_rational(a)));
    IntMatrix k = integer_left_kernel(a);
    CHECK(k.rows() == 5 - r.rank);
    IntMatrix zero(k.rows(), 3);
    CHECK(k * a == zero);
    std::size_t rank_only;
    CHECK(hnf_rows(a, &rank_only) == r.h);
    CHECK(rank_only == r.rank);
  }
}

TEST_CASE("is_unimodular examples") {
  CHECK(is_unimodular(IntMatrix::identity(2)));
  CHECK(is_unimodular(IntMatrix{{1, 1}, {0, 1}}));
  CHECK_FALSE(is_unimodular(IntMatrix{{2, 0}, {0, 1}}));
}

TEST_CASE("random unimodular matrices respect the entry bound") {
  for (unsigned long seed = 0; seed < 200; ++seed) {
    IntMatrix u = random_unimodular(4, 20, 5, seed);
    CHECK(is_unimodular(u));
    for (const auto& x : u.data()) CHECK(abs(x) <= 5);
  }
}

TEST_CASE("charpoly and inverse") {
  CHECK(charpoly(IntMatrix{{0, -2}, {1, -1}}) == std::vector<Int>{2, 1, 1});
  CHECK(charpoly(IntMatrix{{1, -2}, {2, 1}}) == std::vector<Int>{5, -2, 1});
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    IntMatrix a = gen::random_matrix(rng, 3, 5);
    auto cp = charpoly(a);
    CHECK(cp[0] == -determinant(a));
    auto inv = try_inverse(to_rational(a));
    CHECK(inv.has_value() == (determinant(a) != 0));
    if (inv) CHECK(*inv * to_rational(a) == RatMatrix::identity(3));
  }
}
