#include "avcyc/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "avcyc/error.hpp"

namespace avcyc::poly {

Int eval(const IntPoly& p, const Int& x) {
  Int acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat eval(const RatPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly to_rat(const IntPoly& p) {
  RatPoly r;
  r.reserve(p.size());
  for (const auto& c : p) r.emplace_back(c);
  return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
  trim(d);
  return d;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

RatDivMod divmod(const RatPoly& a, const RatPoly& b) {
  int db = degree(b);
  if (db < 0) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  RatPoly r = a;
  trim(r);
  int da = degree(r);
  RatPoly q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0);
  const Rat& lead = b[static_cast<std::size_t>(db)];
  for (int k = da; k >= db; --k) {
    Rat c = r[static_cast<std::size_t>(k)] / lead;
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(r);
  trim(q);
  return {q, r};
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Rat lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

bool divides_monic(const IntPoly& b, const IntPoly& a, IntPoly* quotient) {
  int db = degree(b);
  if (db < 0 || b[static_cast<std::size_t>(db)] != 1)
    throw Error(ErrorCode::InvalidArgument, "divisor must be monic");
  IntPoly r = a;
  trim(r);
  int da = degree(r);
  IntPoly q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0);
  for (int k = da; k >= db; --k) {
    Int c = r[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(r);
  if (!r.empty()) return false;
  if (quotient) {
    trim(q);
    *quotient = std::move(q);
  }
  return true;
}

IntPoly parse_high_first(std::string_view text) {
  std::vector<Int> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    coeffs.push_back(parse_int(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return from_high_first(coeffs);
}

std::string format_high_first(const IntPoly& p) {
  std::ostringstream os;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    os << p[static_cast<std::size_t>(i)].get_str();
    if (i) os << ',';
  }
  return os.str();
}

IntPoly from_high_first(const std::vector<Int>& high_first) {
  return IntPoly(high_first.rbegin(), high_first.rend());
}

std::vector<Int> to_high_first(const IntPoly& p) { return std::vector<Int>(p.rbegin(), p.rend()); }

// ---- arithmetic over F_p -------------------------------------------------

namespace {

using ModPoly = std::vector<long>;

long mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr) {
    long qt = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qt * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qt * nr);
  }
  return mod(t, p);
}

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly reduce(const IntPoly& a, long p) {
  ModPoly r;
  r.reserve(a.size());
  const Int P = p;
  for (const auto& c : a) r.push_back(mod_nonneg(c, P).get_si());
  mtrim(r);
  return r;
}

ModPoly mrem(ModPoly a, const ModPoly& b, long p) {
  mtrim(a);
  const long inv = inv_mod(b.back(), p);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    long c = (a.back() * inv) % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = mod(a[shift + j] - c * b[j], p);
    mtrim(a);
  }
  return a;
}

ModPoly mquot(ModPoly a, const ModPoly& b, long p) {
  mtrim(a);
  const long inv = inv_mod(b.back(), p);
  if (a.size() < b.size()) return {};
  ModPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    long c = (a.back() * inv) % p;
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod(a[shift + j] - c * b[j], p);
    mtrim(a);
  }
  mtrim(q);
  return q;
}

ModPoly mgcd(ModPoly a, ModPoly b, long p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mrem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long inv = inv_mod(a.back(), p);
    for (auto& c : a) c = (c * inv) % p;
  }
  return a;
}

ModPoly mmulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return mrem(c, m, p);
}

ModPoly mpowmod(ModPoly base, long e, const ModPoly& m, long p) {
  ModPoly result{1};
  result = mrem(result, m, p);
  base = mrem(base, m, p);
  while (e > 0) {
    if (e & 1) result = mmulmod(result, base, m, p);
    base = mmulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool squarefree_mod(const IntPoly& p, long prime) {
  ModPoly a = reduce(p, prime);
  ModPoly d = reduce(derivative(p), prime);
  if (a.size() != p.size()) return false;  // leading coefficient vanished
  if (d.empty()) return false;
  return mgcd(a, d, prime).size() == 1;
}

std::vector<int> factor_degrees_mod(const IntPoly& p, long prime) {
  ModPoly f = reduce(p, prime);
  std::vector<int> degs;
  ModPoly x{0, 1};
  ModPoly h = mrem(x, f, prime);
  for (int i = 1; static_cast<int>(f.size()) - 1 >= 2 * i; ++i) {
    h = mpowmod(h, prime, f, prime);
    ModPoly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod(diff[1] - 1, prime);
    mtrim(diff);
    ModPoly g = mgcd(f, diff, prime);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) degs.push_back(i);
      f = mquot(f, g, prime);
      h = mrem(h, f, prime);
    }
  }
  int rest = static_cast<int>(f.size()) - 1;
  if (rest > 0) degs.push_back(rest);
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace avcyc::poly
