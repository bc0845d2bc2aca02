#include <random>

#include "doctest.h"
#include "avcyc/exact_linalg.hpp"
#include "avcyc/stability_kernel.hpp"

using namespace avcyc;
using namespace avcyc::kernel;

namespace {

bool exact_member(const IntMatrix& h, std::vector<Int> v) {
  for (std::size_t j = 0; j < h.rows(); ++j) {
    if (v[j] % h(j, j) != 0) return false;
    Int y = v[j] / h(j, j);
    for (std::size_t k = j; k < h.rows(); ++k) v[k] -= y * h(j, k);
  }
  return true;
}

struct Case {
  StabilityProblem prob;
  std::vector<std::int32_t> data;
  std::vector<std::uint8_t> expected;
  std::size_t blocks;
};

// Random shared diagonal, random off-diagonals; generators either random or
// chosen to stabilize some candidates (scalar multiples of the identity plus
// matrices that preserve the coordinate flag).
Case make_case(std::mt19937_64& rng, std::size_t n, long dmax) {
  Case c;
  std::uniform_int_distribution<long> dd(1, 12);
  std::vector<long> diag(n);
  long d = 1;
  do {
    d = 1;
    for (auto& x : diag) {
      x = dd(rng);
      d *= x;
    }
  } while (d > dmax);
  c.prob.n = n;
  c.prob.d = d;
  c.prob.diag.assign(diag.begin(), diag.end());
  std::uniform_int_distribution<int> gsel(0, 2), ent(-40, 40);
  std::vector<IntMatrix> gens;
  for (int g = 0; g < 2; ++g) {
    IntMatrix m(n, n);
    int kind = gsel(rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (kind == 0) m(i, j) = ent(rng);
        else if (kind == 1) m(i, j) = (i == j) ? ent(rng) : 0;
        else m(i, j) = (j >= i) ? ent(rng) : 0;
      }
    gens.push_back(m);
    std::vector<std::int32_t> red(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) red[i * n + j] = static_cast<std::int32_t>(mod_nonneg(m(i, j), d).get_si());
    c.prob.generators.push_back(red);
  }
  c.blocks = 1 + rng() % 4;
  c.data.assign(c.blocks * n * n * kLanes, 0);
  for (std::size_t cand = 0; cand < c.blocks * kLanes; ++cand) {
    IntMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) h(i, i) = diag[i];
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) h(i, j) = (cand % 3 == 0) ? 0 : static_cast<long>(rng() % diag[j]);
    std::size_t b = cand / kLanes, lane = cand % kLanes;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col)
        c.data[((b * n * n) + r * n + col) * kLanes + lane] = static_cast<std::int32_t>(h(r, col).get_si());
    bool ok = true;
    for (const auto& g : gens) {
      IntMatrix img = h * g;
      for (std::size_t r = 0; r < n && ok; ++r) ok = exact_member(h, img.row(r));
    }
    c.expected.push_back(ok ? 1 : 0);
  }
  return c;
}

}  // namespace

TEST_CASE("scalar kernel matches exact membership") {
  std::mt19937_64 rng(51);
  std::size_t positives = 0;
  for (int t = 0; t < 400; ++t) {
    Case c = make_case(rng, 2 + t % 3, 2000);
    std::vector<std::uint8_t> out(c.blocks * kLanes);
    stability_scalar(c.prob, c.data.data(), c.blocks, out.data());
    CHECK(out == c.expected);
    for (auto x : out) positives += x;
  }
  CHECK(positives > 100);
}

#if defined(__x86_64__) || defined(__i386__)
TEST_CASE("avx2 kernel matches the scalar kernel") {
  if (!__builtin_cpu_supports("avx2")) {
    MESSAGE("avx2 unavailable; skipped");
    return;
  }
  std::mt19937_64 rng(52);
  for (int t = 0; t < 2000; ++t) {
    std::size_t n = 2 + t % 4;
    Case c = make_case(rng, n, t % 2 ? kMaxDeterminant : 200);
    std::vector<std::uint8_t> a(c.blocks * kLanes), b(c.blocks * kLanes);
    stability_scalar(c.prob, c.data.data(), c.blocks, a.data());
    stability_avx2(c.prob, c.data.data(), c.blocks, b.data());
    CHECK(a == b);
    CHECK(a == c.expected);
  }
}
#endif

TEST_CASE("kernel selection honours the override") {
  StabilityFn fn = select_stability_kernel();
  CHECK(fn != nullptr);
  std::string name = stability_kernel_name(fn);
  CHECK((name == "avx2" || name == "scalar"));
  setenv("AVCYC_KERNEL", "scalar", 1);
  CHECK(std::string(stability_kernel_name(select_stability_kernel())) == "scalar");
  unsetenv("AVCYC_KERNEL");
}
