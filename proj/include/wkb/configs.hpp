#ifndef WKB_CONFIGS_HPP
#define WKB_CONFIGS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "wkb/core.hpp"
#include "wkb/interp.hpp"

// k-configurations: per-axiom violation allowances whose weighted sum stays
// within a budget, the configured KB they induce, and the
// cost-as-minimum-configuration characterization.

namespace wkb {

struct MissingEntryError : Error {
  MissingEntryError() : Error("configuration does not cover every axiom/assertion of the KB") {}
};

struct InfiniteCostError : Error {
  InfiniteCostError() : Error("interpretation has infinite cost") {}
};

// Allowances aligned with the owning KB's declaration order: tbox_allowance[i]
// bounds the violation count of kb.tbox[i]; abox_flags[i] is 1 when
// kb.abox[i] may be violated.
struct KConfiguration {
  std::vector<std::uint64_t> tbox_allowance;
  std::vector<std::uint8_t> abox_flags;
  ExtendedCost budget = ExtendedCost::zero();

  bool operator==(const KConfiguration& other) const {
    return tbox_allowance == other.tbox_allowance && abox_flags == other.abox_flags;
  }
};

// The hard KB induced by a configuration: the infinite-weight axioms plus the
// assertions the configuration keeps, together with finite-domain violation
// caps standing in for the counting axioms over the universal role.
struct ConfiguredKB {
  WeightedKB hard;
  std::vector<std::pair<ConceptInclusion, std::uint64_t>> caps;
};

bool is_valid_configuration(const WeightedKB& kb, const KConfiguration& config,
                            const ExtendedCost& k);

// Emits every valid k-configuration exactly once, in lexicographic order over
// the KB's axiom/assertion ordering. Return false from the callback to stop.
// The caller is responsible for bounding blow-up; k must be finite.
void enumerate_configurations(const WeightedKB& kb, const ExtendedCost& k,
                              const std::function<bool(const KConfiguration&)>& yield);

std::vector<KConfiguration> all_configurations(const WeightedKB& kb, const ExtendedCost& k);

ConfiguredKB config_kb(const WeightedKB& kb, const KConfiguration& config);

bool interpretation_satisfies_config(const Interpretation& interp, const WeightedKB& kb,
                                     const KConfiguration& config);

// The budget-tight configuration read off an interpretation's violations,
// together with its cost (equal to cost_of). Throws InfiniteCostError when
// the interpretation has infinite cost.
std::pair<KConfiguration, ExtendedCost> minimal_configuration_of(const Interpretation& interp,
                                                                 const WeightedKB& kb);

}  // namespace wkb

#endif  // WKB_CONFIGS_HPP
