#include "avcyc/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "avcyc/error.hpp"

namespace avcyc {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::NonMonic: return "non_monic";
    case ErrorCode::WrongDegree: return "wrong_degree";
    case ErrorCode::NotPrimePower: return "not_prime_power";
    case ErrorCode::DegenerateLattice: return "degenerate_lattice";
    case ErrorCode::NotAnOrderGenerator: return "not_an_order_generator";
    case ErrorCode::NotAModule: return "not_a_module";
    case ErrorCode::CharpolyMismatch: return "charpoly_mismatch";
    case ErrorCode::ZeroElement: return "zero_element";
    case ErrorCode::NotADivisor: return "not_a_divisor";
    case ErrorCode::Capability: return "capability";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
    case ErrorCode::Network: return "network";
    case ErrorCode::Refusal: return "refusal";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int floor_div(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int mod_nonneg(const Int& a, const Int& b) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int floor_of(const Rat& x) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Int ceil_of(const Rat& x) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Int isqrt(const Int& x) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool is_square(const Int& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

Int ceil_nth_root(const Int& x, unsigned n) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "root of negative number");
  Int r;
  int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  if (!exact) r += 1;
  return r;
}

Int pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<Int> prime_factors(const Int& n) {
  Int m = abs(n);
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "prime factors of zero");
  std::vector<Int> out;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::vector<Int> divisors(const Int& n) {
  Int m = abs(n);
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "divisors of zero");
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      small.push_back(d);
      if (d * d != m) large.push_back(m / d);
    }
  }
  std::reverse(large.begin(), large.end());
  small.insert(small.end(), large.begin(), large.end());
  return small;
}

std::optional<std::pair<Int, unsigned>> as_prime_power(const Int& q) {
  if (q < 2) return std::nullopt;
  auto ps = prime_factors(q);
  if (ps.size() != 1) return std::nullopt;
  unsigned r = 0;
  Int m = q;
  while (m % ps[0] == 0) {
    m /= ps[0];
    ++r;
  }
  return std::make_pair(ps[0], r);
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int parse_int(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::Parse, "not an integer: '" + std::string(text) + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Int(s, 10);
}

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator: '" + std::string(text) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

bool fits_i64(const Int& x) {
  static const Int lo(std::to_string(std::numeric_limits<long long>::min()));
  static const Int hi(std::to_string(std::numeric_limits<long long>::max()));
  return x >= lo && x <= hi;
}

long long to_i64(const Int& x) {
  if (!fits_i64(x)) throw Error(ErrorCode::Internal, "integer does not fit in 64 bits");
  return std::stoll(x.get_str());
}

}  // namespace avcyc

namespace avcyc {

Rat root_upper(const Rat& x, unsigned n, unsigned long scale) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "root of negative number");
  const Int& u = x.get_num();
  const Int& v = x.get_den();
  // x^{1/n} = (u v^{n-1})^{1/n} / v
  Int radicand = u * pow(v, n - 1);
  Int exact;
  if (mpz_root(exact.get_mpz_t(), radicand.get_mpz_t(), n)) {
    Rat r(exact, v);
    r.canonicalize();
    return r;
  }
  Int s = scale;
  Rat r(ceil_nth_root(radicand * pow(s, n), n), v * s);
  r.canonicalize();
  return r;
}

}  // namespace avcyc
