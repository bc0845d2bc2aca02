#include "avcyc/stability_kernel.hpp"

#include <cstdlib>
#include <cstring>

namespace avcyc::kernel {

namespace {

inline std::int64_t mod_d(std::int64_t x, std::int64_t d) {
  std::int64_t r = x % d;
  return r < 0 ? r + d : r;
}

}  // namespace

void stability_scalar(const StabilityProblem& p, const std::int32_t* h, std::size_t blocks,
                      std::uint8_t* out) {
  const std::size_t n = p.n;
  const std::int64_t d = p.d;
  std::int64_t hm[kMaxDim][kMaxDim];
  std::int64_t v[kMaxDim];
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t lane = 0; lane < kLanes; ++lane) {
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) hm[r][c] = h[((b * n * n) + r * n + c) * kLanes + lane];
      bool ok = true;
      for (const auto& g : p.generators) {
        for (std::size_t r = 0; r < n && ok; ++r) {
          for (std::size_t c = 0; c < n; ++c) {
            std::int64_t s = 0;
            for (std::size_t k = r; k < n; ++k) s += hm[r][k] * g[k * n + c];
            v[c] = mod_d(s, d);
          }
          for (std::size_t j = 0; j < n; ++j) {
            if (v[j] % p.diag[j] != 0) {
              ok = false;
              break;
            }
            std::int64_t y = v[j] / p.diag[j];
            if (y == 0) continue;
            for (std::size_t k = j; k < n; ++k) v[k] = mod_d(v[k] - y * hm[j][k], d);
          }
        }
        if (!ok) break;
      }
      out[b * kLanes + lane] = ok ? 1 : 0;
    }
  }
}

StabilityFn select_stability_kernel() {
  const char* env = std::getenv("AVCYC_KERNEL");
  if (env && std::strcmp(env, "scalar") == 0) return &stability_scalar;
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return &stability_avx2;
#endif
  return &stability_scalar;
}

const char* stability_kernel_name(StabilityFn fn) {
#if defined(__x86_64__) || defined(__i386__)
  if (fn == &stability_avx2) return "avx2";
#endif
  return fn == &stability_scalar ? "scalar" : "unknown";
}

}  // namespace avcyc::kernel
