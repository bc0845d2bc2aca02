#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace avcyc::kernel {

inline constexpr std::size_t kLanes = 8;
inline constexpr std::size_t kMaxDim = 8;
/// Largest determinant for which the int32 lanes cannot overflow:
/// n * d^2 stays below 2^31 for n <= 8.
inline constexpr std::int64_t kMaxDeterminant = 16383;

/// Candidate sublattices of Z^n given as upper-triangular row-HNF matrices
/// that all share the same diagonal (product d). Entries are stored in
/// blocks of kLanes candidates: h[(block * n * n + r * n + c) * kLanes + lane].
/// Generators are integer n x n matrices acting on row vectors, already
/// reduced modulo d.
struct StabilityProblem {
  std::size_t n = 0;
  std::int64_t d = 1;
  std::vector<std::int32_t> diag;
  std::vector<std::vector<std::int32_t>> generators;  ///< row-major n*n each
};

/// out[i] = 1 iff candidate i is closed under every generator.
using StabilityFn = void (*)(const StabilityProblem&, const std::int32_t* h, std::size_t blocks,
                             std::uint8_t* out);

void stability_scalar(const StabilityProblem& p, const std::int32_t* h, std::size_t blocks,
                      std::uint8_t* out);
#if defined(__x86_64__) || defined(__i386__)
void stability_avx2(const StabilityProblem& p, const std::int32_t* h, std::size_t blocks,
                    std::uint8_t* out);
#endif

/// AVX2 when the CPU has it, else scalar. AVCYC_KERNEL=scalar forces scalar.
StabilityFn select_stability_kernel();
const char* stability_kernel_name(StabilityFn fn);

}  // namespace avcyc::kernel
