#include <doctest.h>

#include <algorithm>
#include <functional>

#include "helpers.hpp"
#include "wkb/bench.hpp"
#include "wkb/configs.hpp"

using namespace wkb;

TEST_SUITE_BEGIN("configs");

namespace {

KConfiguration config_for(std::vector<std::uint64_t> tbox, std::vector<std::uint8_t> abox,
                          std::uint64_t k) {
  KConfiguration c;
  c.tbox_allowance = std::move(tbox);
  c.abox_flags = std::move(abox);
  c.budget = ExtendedCost::fin_u64(k);
  return c;
}

}  // namespace

TEST_CASE("validity of configurations") {
  WeightedKB visa = bench::visa_fixture();
  // one violation of the soft default axiom fits budget 1
  CHECK(is_valid_configuration(visa, config_for({0, 0, 1}, {0, 0}, 1),
                               ExtendedCost::fin_u64(1)));
  // any allowance on an infinite-weight axiom blows every finite budget
  CHECK_FALSE(is_valid_configuration(visa, config_for({1, 0, 0}, {0, 0}, 5),
                                     ExtendedCost::fin_u64(5)));
  CHECK(is_valid_configuration(visa, config_for({0, 0, 0}, {0, 0}, 0), ExtendedCost::zero()));
  CHECK_THROWS_AS(
      is_valid_configuration(visa, config_for({0}, {0}, 0), ExtendedCost::zero()),
      MissingEntryError);
}

TEST_CASE("enumeration of the running example at budget 1") {
  WeightedKB visa = bench::visa_fixture();
  auto configs = all_configurations(visa, ExtendedCost::fin_u64(1));
  REQUIRE(configs.size() == 3);
  // lexicographic over (tau1, tau2, tau3, alpha1, alpha2)
  CHECK(configs[0].tbox_allowance == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(configs[0].abox_flags == std::vector<std::uint8_t>{0, 0});
  CHECK(configs[1].tbox_allowance == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(configs[1].abox_flags == std::vector<std::uint8_t>{1, 0});
  CHECK(configs[2].tbox_allowance == std::vector<std::uint64_t>{0, 0, 1});
  CHECK(configs[2].abox_flags == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("enumeration corner cases") {
  WeightedKB empty;
  CHECK(all_configurations(empty, ExtendedCost::fin_u64(7)).size() == 1);
  WeightedKB visa = bench::visa_fixture();
  CHECK(all_configurations(visa, ExtendedCost::zero()).size() == 1);
  CHECK_THROWS(all_configurations(visa, ExtendedCost::inf()));
}

TEST_CASE("enumeration against brute-force filtering") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 25; ++i) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, 1 << 12);
    const WeightedKB& kb = instance.kb;
    std::uint64_t k = rng() % 4;
    auto emitted = all_configurations(kb, ExtendedCost::fin_u64(k));

    // product enumeration with post-hoc validity filtering
    std::vector<KConfiguration> expected;
    std::vector<std::uint64_t> tbox(kb.tbox.size(), 0);
    std::vector<std::uint8_t> abox(kb.abox.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t pos) {
      if (pos == kb.tbox.size() + kb.abox.size()) {
        KConfiguration c = config_for(tbox, abox, k);
        if (is_valid_configuration(kb, c, ExtendedCost::fin_u64(k))) expected.push_back(c);
        return;
      }
      if (pos < kb.tbox.size()) {
        for (std::uint64_t v = 0; v <= k; ++v) {
          tbox[pos] = v;
          walk(pos + 1);
        }
        tbox[pos] = 0;
      } else {
        for (std::uint8_t v = 0; v <= 1; ++v) {
          abox[pos - kb.tbox.size()] = v;
          walk(pos + 1);
        }
        abox[pos - kb.tbox.size()] = 0;
      }
    };
    walk(0);
    REQUIRE(emitted.size() == expected.size());
    for (std::size_t j = 0; j < emitted.size(); ++j) CHECK(emitted[j] == expected[j]);
  }
}

TEST_CASE("enumeration count is monotone in the budget") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, 1 << 12);
    std::size_t previous = 0;
    for (std::uint64_t k = 0; k <= 3; ++k) {
      std::size_t count = all_configurations(instance.kb, ExtendedCost::fin_u64(k)).size();
      CHECK(count >= previous);
      previous = count;
    }
  }
}

TEST_CASE("every emitted configuration is valid") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 15; ++i) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, 1 << 12);
    ExtendedCost k = ExtendedCost::fin_u64(rng() % 4);
    for (const auto& c : all_configurations(instance.kb, k))
      CHECK(is_valid_configuration(instance.kb, c, k));
  }
}

TEST_CASE("configured KB of the running example") {
  WeightedKB visa = bench::visa_fixture();
  // keep the no-visa assertion hard, allow the nationality assertion to drop
  ConfiguredKB ckb = config_kb(visa, config_for({0, 0, 0}, {1, 0}, 1));
  REQUIRE(ckb.hard.tbox.size() == 2);
  CHECK(ckb.hard.tbox[0].inclusion == visa.tbox[0].inclusion);
  CHECK(ckb.hard.tbox[1].inclusion == visa.tbox[1].inclusion);
  REQUIRE(ckb.caps.size() == 1);
  CHECK(ckb.caps[0].first == visa.tbox[2].inclusion);  // soft axiom capped, not deleted
  CHECK(ckb.caps[0].second == 0);
  REQUIRE(ckb.hard.abox.size() == 1);
  CHECK(ckb.hard.abox[0].assertion == visa.abox[1].assertion);

  ConfiguredKB all_zero = config_kb(visa, config_for({0, 0, 0}, {0, 0}, 0));
  CHECK(all_zero.hard.abox.size() == 2);
  CHECK(all_zero.caps[0].second == 0);

  WeightedKB single;
  single.add_axiom(Concept::name("A"), Concept::name("B"), Weight::finite(1));
  ConfiguredKB capped = config_kb(single, config_for({4}, {}, 4));
  CHECK(capped.caps[0].second == 4);
}

TEST_CASE("interpretation satisfaction of configurations") {
  WeightedKB visa = bench::visa_fixture();
  Interpretation jb = test::visa_interp_jb();
  CHECK(interpretation_satisfies_config(jb, visa, config_for({0, 0, 1}, {0, 0}, 1)));
  CHECK_FALSE(interpretation_satisfies_config(jb, visa, config_for({0, 0, 0}, {0, 0}, 0)));
}

TEST_CASE("minimal configuration of an interpretation") {
  WeightedKB visa = bench::visa_fixture();
  auto [config, cost] = minimal_configuration_of(test::visa_interp_jb(), visa);
  CHECK(cost == ExtendedCost::fin_u64(1));
  CHECK(config.tbox_allowance == std::vector<std::uint64_t>{0, 0, 1});
  CHECK(config.abox_flags == std::vector<std::uint8_t>{0, 0});

  Interpretation ibc(visa.individuals(), 0);
  ibc.add_to_role("hasNat", *ibc.element_of("p"), *ibc.element_of("b"));
  ibc.add_to_role("hasNat", *ibc.element_of("p"), *ibc.element_of("c"));
  CHECK_THROWS_AS(minimal_configuration_of(ibc, visa), InfiniteCostError);
}

TEST_CASE("property: satisfaction matches the configured KB reading") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, 1 << 12);
    const WeightedKB& kb = instance.kb;
    Interpretation interp =
        bench::random_interpretation(rng, kb.individuals(), bench::InterpSignature::of(kb), 1);
    for (const auto& config : all_configurations(kb, ExtendedCost::fin_u64(rng() % 3))) {
      ConfiguredKB ckb = config_kb(kb, config);
      bool hard_ok = true;
      for (const auto& ax : ckb.hard.tbox)
        hard_ok = hard_ok && satisfies_inclusion(interp, ax.inclusion);
      for (const auto& wa : ckb.hard.abox)
        hard_ok = hard_ok && satisfies_assertion(interp, wa.assertion);
      for (const auto& [inclusion, cap] : ckb.caps)
        hard_ok = hard_ok && violations_of_inclusion(interp, inclusion).count() <= cap;
      CHECK(interpretation_satisfies_config(interp, kb, config) == hard_ok);
    }
  }
}

TEST_CASE("property: cost is the least budget with a satisfied configuration") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 40) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, 1 << 12);
    const WeightedKB& kb = instance.kb;
    Interpretation interp =
        bench::random_interpretation(rng, kb.individuals(), bench::InterpSignature::of(kb), 1);
    ExtendedCost cost = cost_of(interp, kb);
    if (cost.is_infinite() || cost.value() > 6) continue;
    ++checked;

    auto [config, config_cost] = minimal_configuration_of(interp, kb);
    CHECK(config_cost == cost);
    CHECK(interpretation_satisfies_config(interp, kb, config));
    CHECK(is_valid_configuration(kb, config, cost));

    // no configuration under a strictly smaller budget is satisfied
    if (cost > ExtendedCost::zero()) {
      ExtendedCost smaller = ExtendedCost::fin(cost.value() - 1);
      for (const auto& c : all_configurations(kb, smaller))
        CHECK_FALSE(interpretation_satisfies_config(interp, kb, c));
    }
  }
}

TEST_SUITE_END();
