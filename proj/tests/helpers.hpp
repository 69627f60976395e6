#ifndef WKB_TESTS_HELPERS_HPP
#define WKB_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "wkb/bench.hpp"
#include "wkb/core.hpp"
#include "wkb/interp.hpp"

namespace wkb::test {

inline Concept name(const std::string& s) { return Concept::name(s); }
inline Concept nom(const std::string& s) { return Concept::nominal(s); }

inline Query ground_concept_query(const std::string& concept_name, const std::string& ind) {
  Query q;
  q.atoms.push_back(QueryAtom::concept_atom(concept_name, Term::individual(ind)));
  return q;
}

inline Query ground_role_query(const std::string& role, const std::string& a,
                               const std::string& b) {
  Query q;
  q.atoms.push_back(QueryAtom::role_atom(role, Term::individual(a), Term::individual(b)));
  return q;
}

// The running-example interpretation where p keeps nationality b and skips
// the visa, with Visa covering the vacuous elements so that only the soft
// default axiom is violated (cost 1 under the strict cost definition).
inline Interpretation visa_interp_jb() {
  WeightedKB kb = bench::visa_fixture();
  Interpretation interp(kb.individuals(), 0);  // named: c, b, p
  std::size_t c = *interp.element_of("c");
  std::size_t b = *interp.element_of("b");
  std::size_t p = *interp.element_of("p");
  interp.add_to_role("hasNat", p, b);
  interp.add_to_concept("Visa", b);
  interp.add_to_concept("Visa", c);
  interp.add_to_concept("NoVisa", p);
  return interp;
}

// Random concept over a fixed tiny signature; depth-bounded.
inline Concept random_concept(std::mt19937_64& rng, std::size_t depth = 2) {
  static const std::vector<std::string> concepts = {"A", "B", "C"};
  static const std::vector<std::string> roles = {"R", "S"};
  static const std::vector<std::string> inds = {"a", "b"};
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 5) {
      case 0:
        return Concept::name(concepts[rng() % concepts.size()]);
      case 1:
        return Concept::name(concepts[rng() % concepts.size()]);
      case 2:
        return Concept::nominal(inds[rng() % inds.size()]);
      case 3:
        return Concept::top();
      default:
        return Concept::bot();
    }
  }
  switch (rng() % 5) {
    case 0:
      return Concept::conj(random_concept(rng, depth - 1), random_concept(rng, depth - 1));
    case 1:
      return Concept::disj(random_concept(rng, depth - 1), random_concept(rng, depth - 1));
    case 2:
      return Concept::negation(random_concept(rng, depth - 1));
    case 3:
      return Concept::exists(roles[rng() % roles.size()], random_concept(rng, depth - 1));
    default:
      return Concept::forall(roles[rng() % roles.size()], random_concept(rng, depth - 1));
  }
}

// EL-bottom-only random concept (for the monotonicity property).
inline Concept random_el_concept(std::mt19937_64& rng, std::size_t depth = 2) {
  static const std::vector<std::string> concepts = {"A", "B", "C"};
  static const std::vector<std::string> roles = {"R", "S"};
  if (depth == 0 || rng() % 3 == 0) {
    if (rng() % 4 == 0) return Concept::top();
    return Concept::name(concepts[rng() % concepts.size()]);
  }
  if (rng() % 2 == 0)
    return Concept::conj(random_el_concept(rng, depth - 1), random_el_concept(rng, depth - 1));
  return Concept::exists(roles[rng() % roles.size()], random_el_concept(rng, depth - 1));
}

inline bench::InterpSignature tiny_signature() {
  return {{"A", "B", "C"}, {"R", "S"}};
}

}  // namespace wkb::test

#endif  // WKB_TESTS_HELPERS_HPP
