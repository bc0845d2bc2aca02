#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace avcyc {

using Int = mpz_class;
using Rat = mpq_class;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Floor division, rounding toward negative infinity.
Int floor_div(const Int& a, const Int& b);
/// Remainder in [0, |b|).
Int mod_nonneg(const Int& a, const Int& b);

Int floor_of(const Rat& x);
Int ceil_of(const Rat& x);
inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

Int isqrt(const Int& x);
bool is_square(const Int& x);
/// Smallest r >= 0 with r^n >= x, for x >= 0.
Int ceil_nth_root(const Int& x, unsigned n);
Int pow(const Int& base, unsigned long exp);

bool is_prime(const Int& n);
/// Distinct prime factors in increasing order, |n| >= 1.
std::vector<Int> prime_factors(const Int& n);
/// Positive divisors of |n| in increasing order, n != 0.
std::vector<Int> divisors(const Int& n);
/// (p, r) with q = p^r, or nullopt if q is not a prime power.
std::optional<std::pair<Int, unsigned>> as_prime_power(const Int& q);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
/// Accepts an optional sign followed by decimal digits.
Int parse_int(std::string_view text);
/// Accepts "a" or "a/b".
Rat parse_rat(std::string_view text);

/// Fits in int64_t?
bool fits_i64(const Int& x);
long long to_i64(const Int& x);

}  // namespace avcyc

namespace avcyc {
/// Rational upper bound of x^{1/n} (x >= 0), exact when x is a perfect n-th power,
/// otherwise within 1/scale of the true value.
Rat root_upper(const Rat& x, unsigned n, unsigned long scale = 1000);
}  // namespace avcyc
