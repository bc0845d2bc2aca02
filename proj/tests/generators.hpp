#pragma once
// Hand-rolled random generators for property tests.

#include <random>
#include <utility>

#include "avcyc/matrix.hpp"

namespace gen {

inline avcyc::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  avcyc::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

inline avcyc::IntMatrix random_rect(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  avcyc::IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Unimodular U with |entries| <= bound, built from elementary row operations,
// together with its inverse (tracked by the matching column operations).
inline std::pair<avcyc::IntMatrix, avcyc::IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n,
                                                                        int bound, int steps) {
  using avcyc::IntMatrix;
  IntMatrix u = IntMatrix::identity(n), inv = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> kd(-2, 2), kind(0, 5);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    int op = kind(rng);
    if (op == 0 && i != j) {  // swap rows i, j
      for (std::size_t c = 0; c < n; ++c) std::swap(u(i, c), u(j, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(inv(r, i), inv(r, j));
    } else if (op == 1) {  // negate row i
      for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      for (std::size_t r = 0; r < n; ++r) inv(r, i) = -inv(r, i);
    } else if (i != j) {  // row i += k row j
      int k = kd(rng);
      if (k == 0) continue;
      bool ok = true;
      for (std::size_t c = 0; c < n; ++c)
        if (abs(u(i, c) + k * u(j, c)) > bound) ok = false;
      if (!ok) continue;
      for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
      for (std::size_t r = 0; r < n; ++r) inv(r, j) -= k * inv(r, i);
    }
  }
  return {u, inv};
}

}  // namespace gen
