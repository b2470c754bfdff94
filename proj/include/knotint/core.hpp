#pragma once

#include <cstdint>

#include <nlohmann/json_fwd.hpp>

#include "knotint/closure.hpp"

namespace knotint {

struct CoreSettings {
  std::size_t closures = 64;
  // A trim is kept when at least this fraction of the closures still shows
  // the parent's dominant type.
  double acceptance_fraction = 0.5;
  ClosureSettings closure;
};

// Inclusive vertex range of an open chain.
struct KnotCore {
  std::size_t first = 0;
  std::size_t last = 0;
  KnotLabel dominant;

  std::size_t size() const noexcept { return last - first + 1; }
  bool contains(std::size_t k) const noexcept { return k >= first && k <= last; }
};

void to_json(nlohmann::json& j, const KnotCore& core);

// Smallest count c with c / closures >= fraction.
std::size_t votes_needed(std::size_t closures, double fraction);

// Greedy alternating-end trimming. Sub-chains are closed through the parent's
// closure points, so each trim is judged on the same ensemble. Throws
// TrivialChain or UnresolvedType when the parent's dominant type is the unknot
// or off-catalog.
KnotCore knot_core(const OpenChain& chain, std::uint64_t seed, const CoreSettings& settings = {});

// Fraction of the ensemble's closures of [first, last] that have the label;
// recomputed from scratch, without the isotopy shortcuts used by knot_core.
double type_fraction(const OpenChain& chain, std::size_t first, std::size_t last, const KnotLabel& label,
                     std::uint64_t seed, const CoreSettings& settings = {});

}  // namespace knotint
