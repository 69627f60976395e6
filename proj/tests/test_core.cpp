#include <doctest.h>

#include <algorithm>
#include <unordered_set>

#include "helpers.hpp"
#include "wkb/bench.hpp"
#include "wkb/core.hpp"

using namespace wkb;
using test::name;
using test::nom;

TEST_SUITE_BEGIN("core");

TEST_CASE("validate accepts the running example") {
  CHECK(validate(bench::visa_fixture()).empty());
}

TEST_CASE("validate flags zero weights") {
  WeightedKB kb;
  kb.add_assertion(Assertion::concept_assertion("A", "a"), Weight::finite(0));
  auto diags = validate(kb);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message == "weight must be positive");
  CHECK(diags[0].location == "abox[0]");
}

TEST_CASE("validate flags namespace clashes") {
  WeightedKB kb;
  kb.add_axiom(Concept::exists("Visa", name("A")), name("A"), Weight::finite(1));
  kb.add_assertion(Assertion::concept_assertion("Visa", "a"), Weight::finite(1));
  auto diags = validate(kb);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].location == "symbol 'Visa'");
}

TEST_CASE("validate flags duplicates and bad identifiers") {
  WeightedKB kb;
  kb.add_assertion(Assertion::concept_assertion("A", "a"), Weight::finite(1));
  kb.add_assertion(Assertion::concept_assertion("A", "a"), Weight::finite(2));
  kb.add_assertion(Assertion::concept_assertion("B", "_x"), Weight::finite(1));
  auto diags = validate(kb);
  REQUIRE(diags.size() == 2);
}

TEST_CASE("fragment_of") {
  WeightedKB el;
  el.add_axiom(Concept::conj(name("A"), Concept::exists("R", name("B"))), Concept::bot(),
               Weight::finite(1));
  CHECK(fragment_of(el) == Fragment::ELBot);
  CHECK(fragment_of(bench::visa_fixture()) == Fragment::ALCO);
  CHECK(fragment_of(WeightedKB{}) == Fragment::ELBot);
}

TEST_CASE("subconcepts enumerates subtrees") {
  WeightedKB kb;
  kb.add_axiom(name("A"), Concept::exists("R", name("B")), Weight::finite(1));
  auto subs = subconcepts(kb);
  REQUIRE(subs.size() == 3);
  CHECK(std::count(subs.begin(), subs.end(), name("A")) == 1);
  CHECK(std::count(subs.begin(), subs.end(), name("B")) == 1);
  CHECK(std::count(subs.begin(), subs.end(), Concept::exists("R", name("B"))) == 1);

  CHECK(subconcepts(WeightedKB{}).empty());
}

TEST_CASE("subconcepts of the running example") {
  // mechanical subtree enumeration over the three axioms
  auto subs = subconcepts(bench::visa_fixture());
  CHECK(subs.size() == 11);
  auto contains = [&](const Concept& c) {
    return std::count(subs.begin(), subs.end(), c) == 1;
  };
  CHECK(contains(Concept::forall("hasNat", Concept::negation(nom("c")))));
  CHECK(contains(Concept::negation(nom("c"))));
  CHECK(contains(nom("c")));
  CHECK(contains(nom("b")));
  CHECK(contains(name("Visa")));
  CHECK(contains(name("NoVisa")));
  CHECK(contains(Concept::bot()));
  CHECK(contains(Concept::exists("hasNat", nom("c"))));
}

TEST_CASE("violation_concept") {
  ConceptInclusion simple{name("A"), name("B")};
  CHECK(violation_concept(simple) == Concept::conj(name("A"), Concept::negation(name("B"))));

  ConceptInclusion tau3{Concept::forall("hasNat", Concept::negation(nom("c"))), name("Visa")};
  CHECK(violation_concept(tau3) ==
        Concept::conj(Concept::forall("hasNat", Concept::negation(nom("c"))),
                      Concept::negation(name("Visa"))));
}

TEST_CASE("violation concept of a tautology has empty extension") {
  ConceptInclusion top_top{Concept::top(), Concept::top()};
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    Interpretation interp =
        bench::random_interpretation(rng, {"a", "b"}, test::tiny_signature(), 2);
    CHECK(concept_extension(interp, violation_concept(top_top)).none());
  }
}

TEST_CASE("k_infty keeps exactly the hard part") {
  WeightedKB visa = bench::visa_fixture();
  WeightedKB hard = k_infty(visa);
  REQUIRE(hard.tbox.size() == 2);
  CHECK(hard.tbox[0].inclusion == visa.tbox[0].inclusion);
  CHECK(hard.tbox[1].inclusion == visa.tbox[1].inclusion);
  CHECK(hard.abox.empty());

  WeightedKB finite;
  finite.add_assertion(Assertion::concept_assertion("A", "a"), Weight::finite(1));
  CHECK(k_infty(finite).tbox.empty());
  CHECK(k_infty(finite).abox.empty());

  WeightedKB infinite;
  infinite.add_assertion(Assertion::concept_assertion("A", "a"), Weight::infinite());
  CHECK(k_infty(infinite).abox.size() == 1);
}

TEST_CASE("cost arithmetic saturates") {
  CHECK(cost_scale(Weight::infinite(), 0) == ExtendedCost::zero());
  CHECK(cost_scale(Weight::infinite(), 2) == ExtendedCost::inf());
  CHECK(cost_add(ExtendedCost::fin_u64(1), ExtendedCost::fin_u64(2)) ==
        ExtendedCost::fin_u64(3));
  CHECK(cost_add(ExtendedCost::fin_u64(1), ExtendedCost::inf()) == ExtendedCost::inf());
  CHECK(cost_scale(Weight::finite(3), 4) == ExtendedCost::fin_u64(12));

  // no wraparound: accumulation is arbitrary precision
  ExtendedCost big = cost_scale(Weight::finite(UINT64_MAX), 8);
  CHECK(big == ExtendedCost::fin(BigInt(UINT64_MAX) * 8));

  for (std::uint64_t w : {std::uint64_t(1), std::uint64_t(7)})
    CHECK(cost_scale(Weight::finite(w), 0) == ExtendedCost::zero());
}

TEST_CASE("extended cost ordering") {
  CHECK(ExtendedCost::fin_u64(3) < ExtendedCost::inf());
  CHECK_FALSE(ExtendedCost::inf() < ExtendedCost::inf());
  CHECK(ExtendedCost::inf() <= ExtendedCost::inf());
  CHECK(ExtendedCost::fin_u64(2) <= ExtendedCost::fin_u64(2));
  CHECK(ExtendedCost::fin_u64(2) < ExtendedCost::fin_u64(5));
}

TEST_CASE("structural equality is order-sensitive and usable as a set key") {
  Concept ab = Concept::conj(name("A"), name("B"));
  Concept ba = Concept::conj(name("B"), name("A"));
  CHECK(ab != ba);
  CHECK(ab == Concept::conj(name("A"), name("B")));

  std::mt19937_64 rng(5);
  std::unordered_set<Concept, ConceptHash> set;
  std::vector<Concept> samples;
  for (int i = 0; i < 200; ++i) samples.push_back(test::random_concept(rng, 3));
  for (const auto& c : samples) set.insert(c);
  for (const auto& c : samples) CHECK(set.count(c) == 1);
}

TEST_CASE("subconcept sets are closed under subtrees") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    WeightedKB kb;
    kb.add_axiom(test::random_concept(rng, 3), test::random_concept(rng, 2), Weight::finite(1));
    auto subs = subconcepts(kb);
    for (const auto& c : subs)
      c.for_each_subconcept([&](const Concept& sub) {
        CHECK(std::count(subs.begin(), subs.end(), sub) == 1);
      });
  }
}

TEST_CASE("query helpers") {
  Query q;
  q.answer_vars = {"x"};
  q.atoms.push_back(QueryAtom::role_atom("hasNat", Term::variable("x"), Term::variable("y")));
  q.atoms.push_back(QueryAtom::concept_atom("Visa", Term::variable("y")));
  CHECK_FALSE(q.is_boolean());
  CHECK(q.variables() == std::vector<std::string>{"x", "y"});
  CHECK(q.existential_variables() == std::vector<std::string>{"y"});

  Query grounded = q.instantiate({"p"});
  CHECK(grounded.atoms[0].first == Term::individual("p"));
  CHECK(grounded.atoms[0].second == Term::variable("y"));

  Query bcq;
  bcq.atoms.push_back(QueryAtom::concept_atom("Visa", Term::individual("p")));
  CHECK(bcq.is_boolean());
  CHECK(bcq.is_instance_query());
  CHECK(bcq.individuals() == std::vector<std::string>{"p"});
}

TEST_SUITE_END();
