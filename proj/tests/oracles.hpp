#pragma once
// Slow reference computations used only by tests.

#include <functional>
#include <vector>

#include "avcyc/matrix.hpp"

namespace oracle {

using avcyc::Int;
using avcyc::IntMatrix;

inline IntMatrix minor_of(const IntMatrix& a, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i], cols[j]);
  return m;
}

// Laplace expansion along the first row.
inline Int laplace_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Int m = laplace_det(minor_of(a, rows, cols));
    d += (j % 2 == 0 ? 1 : -1) * a(0, j) * m;
  }
  return d;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// k-th determinantal divisor: gcd of all k x k minors.
inline Int determinantal_divisor(const IntMatrix& a, std::size_t k) {
  Int g = 0;
  for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& r) {
    for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& c) {
      Int m = laplace_det(minor_of(a, r, c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    });
  });
  return g;
}

// Invariant factors via d_k / d_{k-1}; zero once the rank is exhausted.
inline std::vector<Int> invariant_factors(const IntMatrix& a) {
  std::vector<Int> out;
  Int prev = 1;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= n; ++k) {
    Int d = determinantal_divisor(a, k);
    if (d == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

// Cofactor entry by definition.
inline IntMatrix cofactor(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix c(n, n);
  if (n == 1) {
    c(0, 0) = 1;
    return c;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) rows.push_back(k);
        if (k != j) cols.push_back(k);
      }
      Int m = laplace_det(minor_of(a, rows, cols));
      c(i, j) = ((i + j) % 2 == 0) ? m : Int(-m);
    }
  return c;
}

}  // namespace oracle
