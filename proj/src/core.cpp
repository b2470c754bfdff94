#include "knotint/core.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"

namespace knotint {

void to_json(nlohmann::json& j, const KnotCore& core) {
  j = nlohmann::json{{"first", core.first}, {"last", core.last}, {"dominant", core.dominant.name()}};
}

std::size_t votes_needed(std::size_t closures, double fraction) {
  const double exact = fraction * static_cast<double>(closures);
  auto needed = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::max<std::size_t>(needed, 1);
}

namespace {

class Trimmer {
 public:
  Trimmer(ClosureEnsemble& ensemble, KnotLabel target, std::span<const KnotLabel> parent_labels,
          std::size_t needed)
      : ens_(ensemble), target_(std::move(target)), needed_(needed) {
    const std::size_t last = ens_.chain_size() - 1;
    for (const auto& l : parent_labels) states_.push_back({0, last, l == target_});
  }

  // Accepts [first, last] as the new current range when enough closures keep
  // the target type.
  bool try_range(std::size_t first, std::size_t last) {
    const std::size_t total = states_.size();
    std::size_t matches = 0;
    pending_.clear();
    for (std::size_t m = 0; m < total; ++m) {
      const bool r = evaluate(m, first, last);
      pending_.push_back(r);
      matches += r;
      if (matches >= needed_) {
        for (std::size_t k = 0; k < pending_.size(); ++k) states_[k] = {first, last, pending_[k] != 0};
        return true;
      }
      if (matches + (total - m - 1) < needed_) return false;
    }
    return false;
  }

 private:
  struct State {
    std::size_t first;
    std::size_t last;
    bool match;
  };

  bool evaluate(std::size_t m, std::size_t first, std::size_t last) {
    const State& s = states_[m];
    std::size_t lo = s.first, hi = s.last;
    while (lo < first) {
      if (!ens_.drop_first_is_isotopy(m, lo, hi)) return ens_.has_type(m, first, last, target_);
      ++lo;
    }
    while (hi > last) {
      if (!ens_.drop_last_is_isotopy(m, lo, hi)) return ens_.has_type(m, first, last, target_);
      --hi;
    }
    return s.match;
  }

  ClosureEnsemble& ens_;
  KnotLabel target_;
  std::size_t needed_;
  std::vector<State> states_;
  std::vector<char> pending_;
};

}  // namespace

KnotCore knot_core(const OpenChain& chain, std::uint64_t seed, const CoreSettings& settings) {
  const std::size_t n = chain.size();
  ClosureEnsemble ensemble(chain.vertices, settings.closures, seed, settings.closure);
  std::vector<KnotLabel> labels;
  labels.reserve(settings.closures);
  for (std::size_t m = 0; m < settings.closures; ++m) labels.push_back(ensemble.classify(m, 0, n - 1));
  const auto spectrum = make_spectrum(labels);
  if (spectrum.dominant.is_unknot()) throw TrivialChain("dominant type of the chain is 0_1");
  if (spectrum.dominant.is_other()) throw UnresolvedType("dominant type " + spectrum.dominant.name());

  Trimmer trimmer(ensemble, spectrum.dominant, labels, votes_needed(settings.closures, settings.acceptance_fraction));
  KnotCore core{0, n - 1, spectrum.dominant};
  for (bool progress = true; progress;) {
    progress = false;
    if (core.last - core.first >= 2 && trimmer.try_range(core.first + 1, core.last)) {
      ++core.first;
      progress = true;
    }
    if (core.last - core.first >= 2 && trimmer.try_range(core.first, core.last - 1)) {
      --core.last;
      progress = true;
    }
  }
  return core;
}

double type_fraction(const OpenChain& chain, std::size_t first, std::size_t last, const KnotLabel& label,
                     std::uint64_t seed, const CoreSettings& settings) {
  ClosureEnsemble ensemble(chain.vertices, settings.closures, seed, settings.closure);
  std::size_t hits = 0;
  for (std::size_t m = 0; m < settings.closures; ++m) hits += ensemble.has_type(m, first, last, label);
  return static_cast<double>(hits) / static_cast<double>(settings.closures);
}

}  // namespace knotint
