#include <immintrin.h>

#include "avcyc/stability_kernel.hpp"

namespace avcyc::kernel {

namespace {

// x mod d for 0 <= |x| < 2^31, via a double reciprocal and one correction.
__attribute__((target("avx2"))) inline __m256i mod_lanes(__m256i x, __m256d dinv, __m256i dv) {
  __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(x));
  __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(x, 1));
  lo = _mm256_floor_pd(_mm256_mul_pd(lo, dinv));
  hi = _mm256_floor_pd(_mm256_mul_pd(hi, dinv));
  __m256i q = _mm256_set_m128i(_mm256_cvttpd_epi32(hi), _mm256_cvttpd_epi32(lo));
  __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, dv));
  // correct rounding in either direction
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, dv));
  __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(dv, _mm256_set1_epi32(1)));
  r = _mm256_sub_epi32(r, _mm256_and_si256(big, dv));
  return r;
}

}  // namespace

__attribute__((target("avx2"))) void stability_avx2(const StabilityProblem& p, const std::int32_t* h,
                                                     std::size_t blocks, std::uint8_t* out) {
  const std::size_t n = p.n;
  const __m256i dv = _mm256_set1_epi32(static_cast<std::int32_t>(p.d));
  const __m256d dinv = _mm256_set1_pd(1.0 / static_cast<double>(p.d));
  __m256i hm[kMaxDim][kMaxDim];
  __m256i v[kMaxDim];
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        hm[r][c] = _mm256_loadu_si256(
            reinterpret_cast<const __m256i*>(h + ((b * n * n) + r * n + c) * kLanes));
    __m256i alive = _mm256_set1_epi32(-1);
    for (const auto& g : p.generators) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          __m256i s = _mm256_setzero_si256();
          for (std::size_t k = r; k < n; ++k)
            s = _mm256_add_epi32(s, _mm256_mullo_epi32(hm[r][k], _mm256_set1_epi32(g[k * n + c])));
          v[c] = mod_lanes(s, dinv, dv);
        }
        for (std::size_t j = 0; j < n; ++j) {
          // the pivot is shared by all lanes
          const std::int32_t piv = p.diag[j];
          const __m256i pv = _mm256_set1_epi32(piv);
          const __m256d pinv = _mm256_set1_pd(1.0 / piv);
          __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(v[j]));
          __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(v[j], 1));
          lo = _mm256_round_pd(_mm256_mul_pd(lo, pinv), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
          hi = _mm256_round_pd(_mm256_mul_pd(hi, pinv), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
          __m256i y = _mm256_set_m128i(_mm256_cvttpd_epi32(hi), _mm256_cvttpd_epi32(lo));
          __m256i exact = _mm256_cmpeq_epi32(_mm256_mullo_epi32(y, pv), v[j]);
          alive = _mm256_and_si256(alive, exact);
          if (_mm256_testz_si256(alive, alive)) break;
          for (std::size_t k = j; k < n; ++k)
            v[k] = mod_lanes(_mm256_sub_epi32(v[k], _mm256_mullo_epi32(y, hm[j][k])), dinv, dv);
        }
        if (_mm256_testz_si256(alive, alive)) break;
      }
      if (_mm256_testz_si256(alive, alive)) break;
    }
    alignas(32) std::int32_t mask[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(mask), alive);
    for (std::size_t lane = 0; lane < kLanes; ++lane) out[b * kLanes + lane] = mask[lane] ? 1 : 0;
  }
}

}  // namespace avcyc::kernel
