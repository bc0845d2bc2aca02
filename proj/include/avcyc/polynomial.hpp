#pragma once

// Dense univariate polynomials as coefficient vectors, lowest degree first.

#include <string>
#include <string_view>
#include <vector>

#include "avcyc/bigint.hpp"

namespace avcyc::poly {

using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

template <class T>
void trim(std::vector<T>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// -1 for the zero polynomial.
template <class T>
int degree(const std::vector<T>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

Int eval(const IntPoly& p, const Int& x);
Rat eval(const RatPoly& p, const Rat& x);

RatPoly to_rat(const IntPoly& p);
IntPoly mul(const IntPoly& a, const IntPoly& b);
RatPoly mul(const RatPoly& a, const RatPoly& b);
RatPoly sub(const RatPoly& a, const RatPoly& b);
RatPoly derivative(const RatPoly& p);
IntPoly derivative(const IntPoly& p);

struct RatDivMod {
  RatPoly quotient;
  RatPoly remainder;
};
RatDivMod divmod(const RatPoly& a, const RatPoly& b);
/// Monic gcd over Q.
RatPoly gcd(RatPoly a, RatPoly b);
/// Exact quotient a / b over Z when b is monic and divides a; nullopt-style empty on failure.
bool divides_monic(const IntPoly& b, const IntPoly& a, IntPoly* quotient = nullptr);

/// Parses "1,-2,5" (highest degree first) into lowest-first coefficients.
IntPoly parse_high_first(std::string_view text);
std::string format_high_first(const IntPoly& p);
IntPoly from_high_first(const std::vector<Int>& high_first);
std::vector<Int> to_high_first(const IntPoly& p);

/// Degrees of the irreducible factors of p mod prime (p squarefree mod prime, monic).
std::vector<int> factor_degrees_mod(const IntPoly& p, long prime);
bool squarefree_mod(const IntPoly& p, long prime);

}  // namespace avcyc::poly
