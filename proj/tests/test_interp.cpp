#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "wkb/bench.hpp"
#include "wkb/core.hpp"
#include "wkb/interp.hpp"

using namespace wkb;
using test::name;
using test::nom;

TEST_SUITE_BEGIN("interp");

namespace {

ElemSet ids(const Interpretation& interp, std::initializer_list<const char*> inds) {
  ElemSet out(interp.domain_size());
  for (const char* i : inds) out.set(*interp.element_of(i));
  return out;
}

}  // namespace

TEST_CASE("top and nominal extensions") {
  Interpretation interp({"a", "b"}, 1);
  ElemSet top = concept_extension(interp, Concept::top());
  CHECK(top.count() == 3);
  ElemSet just_a = concept_extension(interp, nom("a"));
  CHECK(just_a.count() == 1);
  CHECK(just_a.test(0));
  CHECK_THROWS_AS(concept_extension(interp, nom("zz")), UnknownNominalIndividualError);
}

TEST_CASE("universal restriction over the running example") {
  Interpretation jb = test::visa_interp_jb();
  Concept only_not_c = Concept::forall("hasNat", Concept::negation(nom("c")));
  // p's only successor is b; b and c hold vacuously
  CHECK(concept_extension(jb, only_not_c).count() == 3);

  Concept vio_tau3 = Concept::conj(only_not_c, Concept::negation(name("Visa")));
  CHECK(concept_extension(jb, vio_tau3) == ids(jb, {"p"}));
}

TEST_CASE("assertion and inclusion satisfaction") {
  Interpretation jb = test::visa_interp_jb();
  CHECK(satisfies_assertion(jb, Assertion::concept_assertion("NoVisa", "p")));
  CHECK(satisfies_assertion(jb, Assertion::role_assertion("hasNat", "p", "b")));
  CHECK_FALSE(satisfies_assertion(jb, Assertion::role_assertion("hasNat", "b", "p")));
  CHECK_THROWS_AS(satisfies_assertion(jb, Assertion::concept_assertion("NoVisa", "zz")),
                  UnknownIndividualError);

  WeightedKB visa = bench::visa_fixture();
  CHECK_FALSE(satisfies_inclusion(jb, visa.tbox[2].inclusion));  // the soft default
  CHECK(satisfies_inclusion(jb, visa.tbox[0].inclusion));
  CHECK(satisfies_inclusion(jb, {Concept::bot(), name("Visa")}));
}

TEST_CASE("violation sets") {
  Interpretation jb = test::visa_interp_jb();
  WeightedKB visa = bench::visa_fixture();
  CHECK(violations_of_inclusion(jb, visa.tbox[2].inclusion) == ids(jb, {"p"}));
  CHECK(violations_of_inclusion(jb, {name("A"), name("A")}).none());

  // both nationalities: the hard disjointness axiom is violated at p
  Interpretation ibc(visa.individuals(), 0);
  ibc.add_to_role("hasNat", *ibc.element_of("p"), *ibc.element_of("b"));
  ibc.add_to_role("hasNat", *ibc.element_of("p"), *ibc.element_of("c"));
  ibc.add_to_concept("NoVisa", *ibc.element_of("p"));
  CHECK(violations_of_inclusion(ibc, visa.tbox[1].inclusion) == ids(ibc, {"p"}));
  CHECK(cost_of(ibc, visa).is_infinite());
}

TEST_CASE("abox violations") {
  WeightedKB visa = bench::visa_fixture();
  Interpretation jb = test::visa_interp_jb();
  CHECK(violations_of_abox(jb, visa.abox).empty());

  Interpretation empty(visa.individuals(), 0);
  CHECK(violations_of_abox(empty, visa.abox).size() == 2);

  // nationality c instead of b: only the role assertion fails
  Interpretation ic(visa.individuals(), 0);
  ic.add_to_role("hasNat", *ic.element_of("p"), *ic.element_of("c"));
  ic.add_to_concept("NoVisa", *ic.element_of("p"));
  ic.add_to_concept("Visa", *ic.element_of("b"));
  ic.add_to_concept("Visa", *ic.element_of("c"));
  auto violated = violations_of_abox(ic, visa.abox);
  REQUIRE(violated.size() == 1);
  CHECK(violated[0] == Assertion::role_assertion("hasNat", "p", "b"));
  CHECK(cost_of(ic, visa) == ExtendedCost::fin_u64(1));
}

TEST_CASE("cost of the corrected running-example interpretations") {
  WeightedKB visa = bench::visa_fixture();
  CHECK(cost_of(test::visa_interp_jb(), visa) == ExtendedCost::fin_u64(1));
}

TEST_CASE("query matching on the running example") {
  Interpretation jb = test::visa_interp_jb();
  CHECK(satisfies_bcq(jb, test::ground_concept_query("NoVisa", "p")));
  CHECK_FALSE(satisfies_bcq(jb, test::ground_concept_query("Visa", "p")));

  Query conj;
  conj.atoms.push_back(QueryAtom::role_atom("hasNat", Term::individual("p"), Term::variable("x")));
  conj.atoms.push_back(QueryAtom::concept_atom("Visa", Term::variable("x")));
  auto match = find_match(jb, conj);
  REQUIRE(match.has_value());
  CHECK(match->at(Term::variable("x")) == *jb.element_of("b"));

  Query unsat;
  unsat.atoms.push_back(QueryAtom::concept_atom("Missing", Term::variable("x")));
  CHECK_FALSE(satisfies_bcq(jb, unsat));
}

TEST_CASE("property: inclusion violations equal the violation-concept extension") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    Interpretation interp =
        bench::random_interpretation(rng, {"a", "b"}, test::tiny_signature(), 2);
    ConceptInclusion inclusion{test::random_concept(rng), test::random_concept(rng)};
    CHECK(violations_of_inclusion(interp, inclusion) ==
          concept_extension(interp, violation_concept(inclusion)));
  }
}

TEST_CASE("property: universal restriction is the dual of the existential") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    Interpretation interp =
        bench::random_interpretation(rng, {"a", "b"}, test::tiny_signature(), 2);
    Concept arg = test::random_concept(rng);
    ElemSet forall = concept_extension(interp, Concept::forall("R", arg));
    ElemSet exists_neg =
        concept_extension(interp, Concept::exists("R", Concept::negation(arg)));
    CHECK(forall == ~exists_neg);
  }
}

TEST_CASE("property: zero cost exactly characterizes models") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 80; ++i) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, 1 << 12);
    Interpretation interp = bench::random_interpretation(
        rng, instance.kb.individuals(), bench::InterpSignature::of(instance.kb), 1);
    bool model = true;
    for (const auto& ax : instance.kb.tbox)
      model = model && satisfies_inclusion(interp, ax.inclusion);
    for (const auto& wa : instance.kb.abox)
      model = model && satisfies_assertion(interp, wa.assertion);
    CHECK((cost_of(interp, instance.kb) == ExtendedCost::zero()) == model);
  }
}

TEST_CASE("property: EL-bottom extensions grow under element and edge addition") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 60; ++i) {
    Interpretation small =
        bench::random_interpretation(rng, {"a", "b"}, test::tiny_signature(), 1);
    // grow: copy, add one anonymous element, keep old bits, add random new bits
    Interpretation big(small.named(), small.anon_count() + 1);
    for (const auto& [cname, ext] : small.concept_map())
      for (std::size_t e = ext.find_first(); e != ElemSet::npos; e = ext.find_next(e))
        big.add_to_concept(cname, e);
    for (const auto& [rname, ext] : small.role_map())
      for (const auto& [x, y] : ext.pairs()) big.add_to_role(rname, x, y);
    for (const auto& cname : test::tiny_signature().concept_names)
      if (rng() % 2) big.add_to_concept(cname, big.domain_size() - 1);
    for (const auto& rname : test::tiny_signature().role_names)
      if (rng() % 2)
        big.add_to_role(rname, rng() % big.domain_size(), big.domain_size() - 1);

    Concept c = test::random_el_concept(rng);
    ElemSet before = concept_extension(small, c);
    ElemSet after = concept_extension(big, c);
    for (std::size_t e = before.find_first(); e != ElemSet::npos; e = before.find_next(e))
      CHECK(after.test(e));
  }
}

TEST_CASE("property: match search agrees with exhaustive assignment enumeration") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    Interpretation interp =
        bench::random_interpretation(rng, {"a", "b"}, test::tiny_signature(), 2);
    WeightedKB dummy;
    dummy.add_assertion(Assertion::concept_assertion("A", "a"), Weight::finite(1));
    dummy.add_assertion(Assertion::concept_assertion("A", "b"), Weight::finite(1));
    dummy.add_assertion(Assertion::role_assertion("R", "a", "b"), Weight::finite(1));
    dummy.add_assertion(Assertion::role_assertion("S", "a", "b"), Weight::finite(1));
    dummy.add_assertion(Assertion::concept_assertion("B", "a"), Weight::finite(1));
    dummy.add_assertion(Assertion::concept_assertion("C", "a"), Weight::finite(1));
    Query q = bench::random_bcq(dummy, rng);

    std::vector<std::string> vars = q.variables();
    REQUIRE(vars.size() <= 4);
    const std::size_t n = interp.domain_size();
    bool expected = false;
    std::vector<std::size_t> assignment(vars.size(), 0);
    while (!expected) {
      Match binding;
      for (std::size_t v = 0; v < vars.size(); ++v)
        binding.emplace(Term::variable(vars[v]), assignment[v]);
      bool holds = true;
      for (const auto& atom : q.atoms) {
        auto elem = [&](const Term& t) -> std::size_t {
          if (t.is_variable) return binding.at(t);
          return *interp.element_of(t.text);
        };
        if (!atom.is_role) {
          holds = holds && interp.concept_raw(atom.predicate).test(elem(atom.first));
        } else {
          holds = holds && interp.role_raw(atom.predicate).has(elem(atom.first),
                                                               elem(atom.second));
        }
      }
      if (holds) expected = true;
      std::size_t pos = 0;
      while (pos < assignment.size()) {
        if (++assignment[pos] < n) break;
        assignment[pos] = 0;
        ++pos;
      }
      if (pos == assignment.size()) break;
    }
    CHECK(satisfies_bcq(interp, q) == expected);
  }
}

TEST_CASE("witness JSON round-trips") {
  Interpretation jb = test::visa_interp_jb();
  Interpretation back = interpretation_from_json(interpretation_to_json(jb));
  CHECK(back == jb);
  CHECK(back.named() == jb.named());

  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
    Interpretation interp =
        bench::random_interpretation(rng, {"a", "b", "c"}, test::tiny_signature(), 2);
    CHECK(interpretation_from_json(interpretation_to_json(interp)) == interp);
  }
}

TEST_SUITE_END();
