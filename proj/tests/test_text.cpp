#include <doctest.h>

#include "helpers.hpp"
#include "wkb/bench.hpp"
#include "wkb/text.hpp"

using namespace wkb;
using test::name;
using test::nom;

TEST_SUITE_BEGIN("text");

TEST_CASE("parsing the running-example axioms") {
  WeightedKB kb = parse_wkb(
      "tbox:\n"
      "inf: Visa and NoVisa SubClassOf Bot\n"
      "inf: some hasNat.{c} and some hasNat.{b} SubClassOf Bot\n"
      "1: only hasNat.(not {c}) SubClassOf Visa\n"
      "abox:\n"
      "1: hasNat(p, b)\n"
      "2: NoVisa(p)\n");
  WeightedKB expected = bench::visa_fixture();
  REQUIRE(kb.tbox.size() == 3);
  REQUIRE(kb.abox.size() == 2);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(kb.tbox[i].inclusion == expected.tbox[i].inclusion);
    CHECK(kb.tbox[i].weight == expected.tbox[i].weight);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(kb.abox[i].assertion == expected.abox[i].assertion);
    CHECK(kb.abox[i].weight == expected.abox[i].weight);
  }
}

TEST_CASE("zero weights are rejected at parse time") {
  CHECK_THROWS_AS(parse_wkb("abox:\n0: A(a)\n"), ParseError);
  CHECK_THROWS_AS(parse_wkb("abox:\n99999999999999999999999: A(a)\n"), ParseError);
}

TEST_CASE("comments and precedence") {
  Concept c = parse_concept("not A and B or C  # trailing note");
  // not > and > or
  CHECK(c == Concept::disj(Concept::conj(Concept::negation(name("A")), name("B")), name("C")));

  CHECK(parse_concept("some R.A and B") ==
        Concept::conj(Concept::exists("R", name("A")), name("B")));
  CHECK(parse_concept("some R.not {c}") ==
        Concept::exists("R", Concept::negation(nom("c"))));
  CHECK(parse_concept("only R.(A or B)") ==
        Concept::forall("R", Concept::disj(name("A"), name("B"))));
  CHECK(parse_concept("A and B and C") ==
        Concept::conj(Concept::conj(name("A"), name("B")), name("C")));
  CHECK(parse_concept("A and (B and C)") ==
        Concept::conj(name("A"), Concept::conj(name("B"), name("C"))));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_wkb("tbox:\n1: A SubClassOf\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line >= 2);
  }
  CHECK_THROWS_AS(parse_wkb("1: A(a)\n"), ParseError);            // outside a section
  CHECK_THROWS_AS(parse_wkb("abox:\n1: and(a)\n"), ParseError);   // reserved word
  CHECK_THROWS_AS(parse_concept("A and"), ParseError);
  CHECK_THROWS_AS(parse_concept("A B"), ParseError);
}

TEST_CASE("query parsing") {
  Query boolean = parse_query("q() := NoVisa(p)");
  CHECK(boolean.is_boolean());
  CHECK(boolean.is_instance_query());
  CHECK(boolean.atoms[0].predicate == "NoVisa");
  CHECK(boolean.atoms[0].first == Term::individual("p"));

  Query answering = parse_query("q(x) := hasNat(x, ?y), Visa(?y)");
  CHECK(answering.answer_vars == std::vector<std::string>{"x"});
  REQUIRE(answering.atoms.size() == 2);
  CHECK(answering.atoms[0].first == Term::variable("x"));
  CHECK(answering.atoms[0].second == Term::variable("y"));
  CHECK(answering.atoms[1].first == Term::variable("y"));
  CHECK(answering.existential_variables() == std::vector<std::string>{"y"});

  Query conj = parse_query("q() := hasNat(p,c), Visa(p)");
  REQUIRE(conj.atoms.size() == 2);
  CHECK(conj.atoms[0].second == Term::individual("c"));

  CHECK_THROWS_AS(parse_query("q(x) := Visa(p)"), UndeclaredAnswerVariableError);
  CHECK_THROWS_AS(parse_query("p() := Visa(p)"), ParseError);
  CHECK_THROWS_AS(parse_query("q() := "), ParseError);
}

TEST_CASE("query serialization round-trips") {
  for (const char* text :
       {"q() := NoVisa(p)", "q(x) := hasNat(x, ?y), Visa(?y)", "q(x, z) := R(x, z)"}) {
    Query q = parse_query(text);
    Query again = parse_query(serialize_query(q));
    CHECK(again.answer_vars == q.answer_vars);
    REQUIRE(again.atoms.size() == q.atoms.size());
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
      CHECK(again.atoms[i].predicate == q.atoms[i].predicate);
      CHECK(again.atoms[i].first == q.atoms[i].first);
      CHECK(again.atoms[i].is_role == q.atoms[i].is_role);
    }
  }
}

TEST_CASE("property: serialization round-trips structurally") {
  WeightedKB visa = bench::visa_fixture();
  WeightedKB again = parse_wkb(serialize_wkb(visa));
  REQUIRE(again.tbox.size() == visa.tbox.size());
  for (std::size_t i = 0; i < visa.tbox.size(); ++i) {
    CHECK(again.tbox[i].inclusion == visa.tbox[i].inclusion);
    CHECK(again.tbox[i].weight == visa.tbox[i].weight);
  }

  std::mt19937_64 rng(91);
  for (int i = 0; i < 80; ++i) {
    WeightedKB kb;
    std::size_t axioms = 1 + rng() % 3;
    for (std::size_t j = 0; j < axioms; ++j)
      kb.add_axiom(test::random_concept(rng, 3), test::random_concept(rng, 3),
                   rng() % 2 ? Weight::finite(1 + rng() % 100) : Weight::infinite());
    kb.add_assertion(Assertion::role_assertion("R", "a", "b"), Weight::finite(7));
    kb.add_assertion(Assertion::concept_assertion("A", "a"), Weight::infinite());

    WeightedKB back = parse_wkb(serialize_wkb(kb));
    REQUIRE(back.tbox.size() == kb.tbox.size());
    for (std::size_t j = 0; j < kb.tbox.size(); ++j) {
      CHECK(back.tbox[j].inclusion == kb.tbox[j].inclusion);
      CHECK(back.tbox[j].weight == kb.tbox[j].weight);
    }
    REQUIRE(back.abox.size() == kb.abox.size());
    for (std::size_t j = 0; j < kb.abox.size(); ++j) {
      CHECK(back.abox[j].assertion == kb.abox[j].assertion);
      CHECK(back.abox[j].weight == kb.abox[j].weight);
    }
    // serialization is deterministic
    CHECK(serialize_wkb(back) == serialize_wkb(kb));
  }
}

TEST_CASE("generated reduction KBs survive the text round trip") {
  std::mt19937_64 rng(97);
  bench::Graph g = bench::random_graph(rng, 5);
  WeightedKB kb = bench::gen_3col(g).kb;
  WeightedKB back = parse_wkb(serialize_wkb(kb));
  CHECK(serialize_wkb(back) == serialize_wkb(kb));
}

TEST_SUITE_END();
