#ifndef WKB_SEARCH_HPP
#define WKB_SEARCH_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wkb/configs.hpp"
#include "wkb/core.hpp"
#include "wkb/interp.hpp"

// Bounded-domain model search: find an interpretation of cost at most k,
// optionally constrained to satisfy or avoid a Boolean query, plus the
// type-based model-shrinking operation and the domain-bound policy.

namespace wkb {

struct BudgetExhaustedError : Error {
  explicit BudgetExhaustedError(std::uint64_t nodes)
      : Error("search node budget exhausted after " + std::to_string(nodes) + " nodes"),
        nodes(nodes) {}
  std::uint64_t nodes;
};

struct DomainBound {
  std::uint64_t anon_limit = 0;
  // whether anon_limit reaches the applicable completeness bound
  bool theoretical_complete = false;
};

inline constexpr std::uint64_t kDefaultAnonCap = 12;

enum class BoundProblem { BCS, Possible, Certain };

// BCS/Possible: 2^|subconcepts(T)| anonymous elements suffice (element types
// over the TBox subconcepts bound the anonymous part); values beyond the cap
// are reported as the cap with theoretical_complete = false. Certain: no
// certified bound is computed, the configured cap is returned as incomplete.
DomainBound completeness_bound(const WeightedKB& kb, BoundProblem problem,
                               std::uint64_t cap = kDefaultAnonCap);

struct QueryConstraint {
  enum class Kind { None, MustSatisfy, MustAvoid };
  Kind kind = Kind::None;
  Query query;

  static QueryConstraint none() { return {}; }
  static QueryConstraint must_satisfy(Query q) {
    return {Kind::MustSatisfy, std::move(q)};
  }
  static QueryConstraint must_avoid(Query q) { return {Kind::MustAvoid, std::move(q)}; }
};

struct SearchOutcome {
  std::optional<Interpretation> witness;
  bool complete = false;  // meaningful for the no-witness case

  bool found() const { return witness.has_value(); }
};

struct SearchOptions {
  std::uint64_t node_budget = 50'000'000;
  // debug switch: turns off cost pruning, constraint pruning and forced
  // assignments; verdicts must not change
  bool disable_pruning = false;
};

// Shared by concurrent workers; counts are flushed per search call.
struct SearchStats {
  std::atomic<std::uint64_t> nodes{0};

  void add(std::uint64_t n) { nodes.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t count() const { return nodes.load(std::memory_order_relaxed); }
};

// Exhaustive search over domains of size |named| + 0..anon_limit (skipping
// the empty domain), iterative deepening on the anonymous count, then
// branch-and-bound over membership literals with running-cost pruning.
// A returned witness re-validates against the interp operations.
SearchOutcome find_interpretation(const WeightedKB& kb, const ExtendedCost& k,
                                  const QueryConstraint& constraint, const DomainBound& bound,
                                  const SearchOptions& options = {},
                                  SearchStats* stats = nullptr);

// Same engine over a configured KB: hard part must be satisfied outright and
// each capped inclusion may have at most its allowance of violations.
SearchOutcome find_config_model(const ConfiguredKB& ckb, const QueryConstraint& constraint,
                                const DomainBound& bound, const SearchOptions& options = {},
                                SearchStats* stats = nullptr);

// Fresh individual names for the existential variables of a Boolean query,
// one per variable, guaranteed not to collide with the KB's identifiers. The
// KB itself is returned unchanged; grounding the query atoms per valuation
// is the caller's job.
std::pair<WeightedKB, std::vector<std::string>> extend_with_query(const WeightedKB& kb,
                                                                  const Query& query);

// Quotient of the interpretation merging anonymous elements whose membership
// pattern over subconcepts(tbox) coincides; named elements are never merged
// and role edges are lifted existentially. Output size is bounded by
// |named| + 2^|subconcepts(tbox)|.
Interpretation filtrate(const Interpretation& interp, const std::vector<WeightedAxiom>& tbox);

}  // namespace wkb

#endif  // WKB_SEARCH_HPP
