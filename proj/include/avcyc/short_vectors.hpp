#pragma once

#include <functional>
#include <vector>

#include "avcyc/matrix.hpp"

namespace avcyc {

/// Exact LLL on a positive definite rational Gram matrix. Returns the
/// unimodular T such that T * basis is reduced.
IntMatrix lll_reduce(const RatMatrix& gram, const Rat& delta = Rat(3, 4));

enum class EnumStatus { complete, stopped, budget_exhausted };

/// Fincke-Pohst enumeration of the nonzero integer vectors x with
/// x G x^T <= radius, one representative per +-pair. `visit` returns true to
/// stop. Interval endpoints are decided exactly.
EnumStatus enumerate_short_vectors(
    const RatMatrix& gram, const Rat& radius,
    const std::function<bool(const std::vector<Int>& x, const Rat& length)>& visit,
    unsigned long max_nodes);

}  // namespace avcyc
