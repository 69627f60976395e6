#ifndef WKB_REASON_HPP
#define WKB_REASON_HPP

#include <optional>
#include <utility>
#include <vector>

#include "wkb/configs.hpp"
#include "wkb/core.hpp"
#include "wkb/interp.hpp"
#include "wkb/search.hpp"

// Top-level decision procedures: bounded-cost satisfiability, optimal cost,
// the four entailment semantics, answer enumeration, and the
// configuration-engine cross-check path.

namespace wkb {

struct UnknownQueryIndividualError : Error {
  explicit UnknownQueryIndividualError(const std::string& name)
      : Error("query individual does not occur in the KB: " + name), individual(name) {}
  std::string individual;
};

struct Semantics {
  enum class Kind { CertainBounded, PossibleBounded, CertainOpt, PossibleOpt };
  Kind kind;
  ExtendedCost k;  // bounded variants only

  static Semantics certain_bounded(ExtendedCost k) {
    return {Kind::CertainBounded, std::move(k)};
  }
  static Semantics possible_bounded(ExtendedCost k) {
    return {Kind::PossibleBounded, std::move(k)};
  }
  static Semantics certain_opt() { return {Kind::CertainOpt, ExtendedCost::zero()}; }
  static Semantics possible_opt() { return {Kind::PossibleOpt, ExtendedCost::zero()}; }

  bool is_certain() const {
    return kind == Kind::CertainBounded || kind == Kind::CertainOpt;
  }
  bool is_opt() const { return kind == Kind::CertainOpt || kind == Kind::PossibleOpt; }
};

struct Verdict {
  bool answer = false;
  bool complete = false;
  // distinguished state: the optimal cost is infinite, so the opt semantics
  // quantify over nothing the engine is prepared to commit to
  bool opt_infinite = false;
  std::optional<Interpretation> witness;  // possible-yes / certain-no / bcs-yes
  std::optional<ExtendedCost> opt_used;
};

Verdict bcs(const WeightedKB& kb, const ExtendedCost& k, const DomainBound& bound,
            const SearchOptions& options = {}, SearchStats* stats = nullptr);

enum class OptStrategy { BinarySearch, LinearScan };

// (Inf, bound-complete) when the hard part has no model within the bound;
// otherwise the least k in [0, cost of a found hard-part model] for which
// bcs answers yes.
std::pair<ExtendedCost, bool> optimal_cost(const WeightedKB& kb, const DomainBound& bound,
                                           const SearchOptions& options = {},
                                           SearchStats* stats = nullptr,
                                           OptStrategy strategy = OptStrategy::BinarySearch);

Verdict entails(const WeightedKB& kb, const Query& query, const Semantics& sem,
                const DomainBound& bound, const SearchOptions& options = {},
                SearchStats* stats = nullptr);

// Cross-check engine: certain-k decided by checking, for every
// k-configuration, that no model of the configured KB within the bound
// avoids the query. Intended for small finite k.
Verdict entails_via_configurations(const WeightedKB& kb, const Query& query,
                                   const ExtendedCost& k, const DomainBound& bound,
                                   const SearchOptions& options = {},
                                   SearchStats* stats = nullptr);

Verdict bcs_via_configurations(const WeightedKB& kb, const ExtendedCost& k,
                               const DomainBound& bound, const SearchOptions& options = {},
                               SearchStats* stats = nullptr);

Verdict possible_via_configurations(const WeightedKB& kb, const Query& query,
                                    const ExtendedCost& k, const DomainBound& bound,
                                    const SearchOptions& options = {},
                                    SearchStats* stats = nullptr);

struct AnswerTuple {
  std::vector<std::string> individuals;
  Verdict verdict;
};

struct AnswersResult {
  std::vector<AnswerTuple> tuples;  // positive verdicts only
  bool complete = true;             // conjunction over all tuples checked
};

// Grounds the answer variables over the KB's individuals (declaration
// order), returning the tuples with positive verdicts; deterministic
// lexicographic tuple order.
AnswersResult answers(const WeightedKB& kb, const Query& query, const Semantics& sem,
                      const DomainBound& bound, const SearchOptions& options = {},
                      SearchStats* stats = nullptr);

// One KB per valuation of the query's existential variables into KB
// individuals plus fresh names, with the grounded atoms added as hard
// assertions. fresh_used counts the distinct fresh individuals a valuation
// introduces; they eat into the anonymous-domain budget so that verdicts
// line up with enumeration over the original KB at the same bound.
struct GroundedVariant {
  WeightedKB kb;
  std::size_t fresh_used = 0;
};
std::vector<GroundedVariant> possible_groundings(const WeightedKB& kb, const Query& query);

}  // namespace wkb

#endif  // WKB_REASON_HPP
