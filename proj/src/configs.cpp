#include "wkb/configs.hpp"

namespace wkb {

bool is_valid_configuration(const WeightedKB& kb, const KConfiguration& config,
                            const ExtendedCost& k) {
  if (config.tbox_allowance.size() != kb.tbox.size() ||
      config.abox_flags.size() != kb.abox.size())
    throw MissingEntryError();
  ExtendedCost spent = ExtendedCost::zero();
  for (std::size_t i = 0; i < kb.tbox.size(); ++i)
    spent += cost_scale(kb.tbox[i].weight, config.tbox_allowance[i]);
  for (std::size_t i = 0; i < kb.abox.size(); ++i) {
    if (config.abox_flags[i] > 1) return false;
    spent += cost_scale(kb.abox[i].weight, config.abox_flags[i]);
  }
  return spent <= k;
}

void enumerate_configurations(const WeightedKB& kb, const ExtendedCost& k,
                              const std::function<bool(const KConfiguration&)>& yield) {
  if (k.is_infinite()) throw Error("configuration enumeration requires a finite budget");

  KConfiguration config;
  config.tbox_allowance.assign(kb.tbox.size(), 0);
  config.abox_flags.assign(kb.abox.size(), 0);
  config.budget = k;

  const std::size_t total = kb.tbox.size() + kb.abox.size();
  bool stopped = false;

  // Depth-first in increasing allowance order emits configurations in
  // lexicographic order over (tbox..., abox...).
  std::function<void(std::size_t, BigInt)> walk = [&](std::size_t pos, BigInt remaining) {
    if (stopped) return;
    if (pos == total) {
      if (!yield(config)) stopped = true;
      return;
    }
    if (pos < kb.tbox.size()) {
      const Weight& w = kb.tbox[pos].weight;
      // allowances above remaining/weight cannot fit the budget
      BigInt max_allowance = w.is_infinite() ? BigInt(0) : remaining / BigInt(w.value());
      std::uint64_t cap = max_allowance > BigInt(UINT64_MAX)
                              ? UINT64_MAX
                              : static_cast<std::uint64_t>(max_allowance);
      for (std::uint64_t v = 0; v <= cap && !stopped; ++v) {
        config.tbox_allowance[pos] = v;
        BigInt cost = w.is_infinite() ? BigInt(0) : BigInt(w.value()) * v;
        walk(pos + 1, remaining - cost);
        if (v == UINT64_MAX) break;
      }
      config.tbox_allowance[pos] = 0;
    } else {
      const std::size_t i = pos - kb.tbox.size();
      const Weight& w = kb.abox[i].weight;
      config.abox_flags[i] = 0;
      walk(pos + 1, remaining);
      if (!w.is_infinite() && BigInt(w.value()) <= remaining && !stopped) {
        config.abox_flags[i] = 1;
        walk(pos + 1, remaining - BigInt(w.value()));
      }
      config.abox_flags[i] = 0;
    }
  };
  walk(0, k.value());
}

std::vector<KConfiguration> all_configurations(const WeightedKB& kb, const ExtendedCost& k) {
  std::vector<KConfiguration> out;
  enumerate_configurations(kb, k, [&](const KConfiguration& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

ConfiguredKB config_kb(const WeightedKB& kb, const KConfiguration& config) {
  if (config.tbox_allowance.size() != kb.tbox.size() ||
      config.abox_flags.size() != kb.abox.size())
    throw MissingEntryError();
  ConfiguredKB out;
  for (std::size_t i = 0; i < kb.tbox.size(); ++i) {
    if (kb.tbox[i].weight.is_infinite())
      out.hard.tbox.push_back({kb.tbox[i].inclusion, Weight::infinite()});
    else
      out.caps.emplace_back(kb.tbox[i].inclusion, config.tbox_allowance[i]);
  }
  for (std::size_t i = 0; i < kb.abox.size(); ++i) {
    if (config.abox_flags[i] == 0)
      out.hard.abox.push_back({kb.abox[i].assertion, Weight::infinite()});
  }
  return out;
}

bool interpretation_satisfies_config(const Interpretation& interp, const WeightedKB& kb,
                                     const KConfiguration& config) {
  if (config.tbox_allowance.size() != kb.tbox.size() ||
      config.abox_flags.size() != kb.abox.size())
    throw MissingEntryError();
  for (std::size_t i = 0; i < kb.tbox.size(); ++i) {
    if (violations_of_inclusion(interp, kb.tbox[i].inclusion).count() >
        config.tbox_allowance[i])
      return false;
  }
  for (std::size_t i = 0; i < kb.abox.size(); ++i) {
    if (config.abox_flags[i] == 0 && !satisfies_assertion(interp, kb.abox[i].assertion))
      return false;
  }
  return true;
}

std::pair<KConfiguration, ExtendedCost> minimal_configuration_of(const Interpretation& interp,
                                                                 const WeightedKB& kb) {
  KConfiguration config;
  config.tbox_allowance.reserve(kb.tbox.size());
  config.abox_flags.reserve(kb.abox.size());
  ExtendedCost total = ExtendedCost::zero();
  for (const auto& ax : kb.tbox) {
    std::uint64_t count = violations_of_inclusion(interp, ax.inclusion).count();
    config.tbox_allowance.push_back(count);
    total += cost_scale(ax.weight, count);
  }
  for (const auto& wa : kb.abox) {
    bool violated = !satisfies_assertion(interp, wa.assertion);
    config.abox_flags.push_back(violated ? 1 : 0);
    if (violated) total += ExtendedCost::of_weight(wa.weight);
  }
  if (total.is_infinite()) throw InfiniteCostError();
  config.budget = total;
  return {config, total};
}

}  // namespace wkb
