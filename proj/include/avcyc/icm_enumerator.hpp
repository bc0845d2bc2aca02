#pragma once

#include <string>
#include <vector>

#include "avcyc/order_ideal.hpp"
#include "avcyc/stability_kernel.hpp"

namespace avcyc {

enum class Completeness { certified, heuristic };
const char* to_string(Completeness c);

struct IcmClass {
  IdealLattice rep;  ///< integral O-ideal of smallest index found in its class
  OrderDesc multiplicator_ring;
  Int index;  ///< [O : rep]
};

struct IndeterminatePair {
  std::size_t class_index;
  IdealLattice candidate;
  std::string note;
};

struct IcmStats {
  std::size_t candidates = 0;
  std::size_t stable = 0;
  std::size_t equivalence_calls = 0;
  std::size_t seeded_hits = 0;
  std::string kernel;
};

struct IcmOptions {
  EquivalenceOptions equivalence;
  kernel::StabilityFn stability = nullptr;  ///< nullptr: runtime selection
  /// T2 radius multiple used to pre-seed each class with its small multiples.
  Rat seed_scale = 4;
};

struct IcmResult {
  OrderDesc order;
  std::vector<IcmClass> classes;  ///< sorted by (index, canonical basis)
  Int index_bound;
  Int minkowski_bound;
  Int certified_bound;
  Completeness completeness = Completeness::heuristic;
  std::vector<IndeterminatePair> indeterminate;
  IcmStats stats;
};

/// floor((2g)!/(2g)^{2g} (4/pi)^g sqrt|disc O|).
Int minkowski_bound(const OrderDesc& o);
/// floor((2g)!/(2g)^{2g} (4/pi)^g |N(z)| / sqrt|disc O|) for a short nonzero
/// z in (O : O^dual); at least minkowski_bound, equal when O^dual is principal.
Int certified_index_bound(const OrderDesc& o);

/// Integral O-ideals of index exactly d, in canonical order.
std::vector<IdealLattice> ideals_of_index(const OrderDesc& o, const Int& d,
                                          kernel::StabilityFn fn = nullptr,
                                          std::size_t* candidates = nullptr);

/// Throws InvalidArgument for index_bound < 1.
IcmResult enumerate_icm(const OrderDesc& o, const Int& index_bound, const IcmOptions& opts = {});

/// f(1) / (ell (1 - alpha)).
FieldElement sigma_element(const FieldPtr& field, const Int& ell);

/// Indices of classes stable under sigma_ell. Both the direct stability test
/// and multiplicator-ring membership are evaluated; a disagreement throws
/// Internal. Throws NotADivisor unless ell is a prime dividing f(1).
std::vector<std::size_t> refine_by_sigma_indices(const IcmResult& result, const Int& ell);
std::vector<IdealLattice> refine_by_sigma(const IcmResult& result, const Int& ell);

}  // namespace avcyc
