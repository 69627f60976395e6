#ifndef WKB_INTERP_HPP
#define WKB_INTERP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "wkb/core.hpp"

// Explicit finite interpretations, concept-extension evaluation, violation
// sets, interpretation cost, and conjunctive-query matching. All operations
// are pure; interpretations are immutable values once built.

namespace wkb {

using ElemSet = boost::dynamic_bitset<>;

// Role extension stored as successor rows: succ[i] is the set of j with
// (i, j) in the role.
struct RoleExtension {
  std::vector<ElemSet> succ;

  explicit RoleExtension(std::size_t domain = 0)
      : succ(domain, ElemSet(domain)) {}
  bool has(std::size_t i, std::size_t j) const { return succ[i].test(j); }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
};

// Domain elements are 0..domain_size()-1; ids 0..named.size()-1 denote the
// named individuals in order (weak standard names), the rest are anonymous.
class Interpretation {
 public:
  Interpretation(std::vector<std::string> named, std::size_t anon_count);

  std::size_t domain_size() const { return named_.size() + anon_count_; }
  std::size_t named_count() const { return named_.size(); }
  std::size_t anon_count() const { return anon_count_; }
  const std::vector<std::string>& named() const { return named_; }

  // Id of a named individual; nullopt when absent.
  std::optional<std::size_t> element_of(const std::string& individual) const;

  Interpretation& set_concept(const std::string& name, ElemSet extension);
  Interpretation& add_to_concept(const std::string& name, std::size_t element);
  Interpretation& set_role(const std::string& name, RoleExtension extension);
  Interpretation& add_to_role(const std::string& name, std::size_t from, std::size_t to);

  // Absent names have empty extensions.
  const ElemSet& concept_raw(const std::string& name) const;
  const RoleExtension& role_raw(const std::string& name) const;

  const std::map<std::string, ElemSet>& concept_map() const { return concepts_; }
  const std::map<std::string, RoleExtension>& role_map() const { return roles_; }

  bool operator==(const Interpretation& other) const;

 private:
  std::vector<std::string> named_;
  std::size_t anon_count_;
  std::map<std::string, ElemSet> concepts_;
  std::map<std::string, RoleExtension> roles_;
  ElemSet empty_set_;
  RoleExtension empty_role_;
};

// Standard ALCO extension, computed bottom-up; universal restrictions are
// evaluated as the complement of some R.(not C).
ElemSet concept_extension(const Interpretation& interp, const Concept& c);

// Batch variant sharing subterm evaluations across the given concepts.
std::vector<ElemSet> concept_extensions(const Interpretation& interp,
                                        const std::vector<Concept>& concepts);

bool satisfies_assertion(const Interpretation& interp, const Assertion& assertion);
bool satisfies_inclusion(const Interpretation& interp, const ConceptInclusion& inclusion);

ElemSet violations_of_inclusion(const Interpretation& interp, const ConceptInclusion& inclusion);
std::vector<Assertion> violations_of_abox(const Interpretation& interp,
                                          const std::vector<WeightedAssertion>& abox);

ExtendedCost cost_of(const Interpretation& interp, const WeightedKB& kb);

// Query matching. A match maps every query term to an element, with
// individual terms bound to their own named elements.
using Match = std::map<Term, std::size_t>;

std::optional<Match> find_match(const Interpretation& interp, const Query& query,
                                const Match& binding = {});
bool satisfies_bcq(const Interpretation& interp, const Query& query);

// Witness wire format: {"domain": n, "named": [...], "concepts": {...},
// "roles": {...}} with extensions sorted by element id.
std::string interpretation_to_json(const Interpretation& interp);
Interpretation interpretation_from_json(const std::string& text);

}  // namespace wkb

#endif  // WKB_INTERP_HPP
