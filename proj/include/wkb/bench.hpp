#ifndef WKB_BENCH_HPP
#define WKB_BENCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wkb/core.hpp"
#include "wkb/interp.hpp"
#include "wkb/reason.hpp"
#include "wkb/search.hpp"

// Ground-truth machinery: brute-force interpretation enumeration and
// definitional oracles, weight-maximal repair oracles, the hardness
// reduction generators with independent combinatorial solvers, and the
// running example fixture. The oracle inner loop is data-parallel; a serial
// reference implementation is kept alongside the OpenMP kernel and both must
// agree bit for bit.

namespace wkb::bench {

struct BudgetExceededError : Error {
  explicit BudgetExceededError(BigInt count)
      : Error("enumeration budget exceeded; refused to enumerate " + count.str() +
              " interpretations"),
        refused(std::move(count)) {}
  BigInt refused;
};

struct HypothesisViolationError : Error {
  using Error::Error;
};

struct UnsatisfiableInputError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Enumeration

struct InterpSignature {
  std::vector<std::string> concept_names;
  std::vector<std::string> role_names;

  static InterpSignature of(const WeightedKB& kb) {
    return {kb.concept_names(), kb.role_names()};
  }
};

// Interpretations over domains of size |named| + 0..anon_limit (the empty
// domain is skipped), before deduplication.
BigInt enumeration_count(std::size_t named_count, const InterpSignature& sig,
                         std::size_t anon_limit);

// Every interpretation over the given named individuals and signature, up to
// anonymous-element isomorphism (lexicographically minimal orbit
// representatives), each exactly once. Return false from the callback to
// stop. Throws BudgetExceededError up front when the raw count exceeds the
// budget.
void enumerate_interpretations(const std::vector<std::string>& named, const InterpSignature& sig,
                               std::size_t anon_limit, std::uint64_t budget,
                               const std::function<bool(const Interpretation&)>& yield);

// ---------------------------------------------------------------------------
// Definitional oracles

enum class ExecMode { Serial, Parallel };

// One exhaustive pass per KB: the minimum interpretation cost within the
// bound, and per query the minimum cost of a satisfying and of a refuting
// interpretation. Everything the oracle answers derives from these.
struct OracleSuite {
  ExtendedCost min_cost = ExtendedCost::inf();
  std::vector<ExtendedCost> min_satisfying;  // per query
  std::vector<ExtendedCost> min_avoiding;    // per query

  bool operator==(const OracleSuite& other) const {
    return min_cost == other.min_cost && min_satisfying == other.min_satisfying &&
           min_avoiding == other.min_avoiding;
  }
};

OracleSuite oracle_pass(const WeightedKB& kb, const std::vector<Query>& queries,
                        const DomainBound& bound, std::uint64_t budget,
                        ExecMode mode = ExecMode::Parallel);

Verdict oracle_bcs(const WeightedKB& kb, const ExtendedCost& k, const DomainBound& bound,
                   std::uint64_t budget, ExecMode mode = ExecMode::Parallel);
std::pair<ExtendedCost, bool> oracle_opt(const WeightedKB& kb, const DomainBound& bound,
                                         std::uint64_t budget,
                                         ExecMode mode = ExecMode::Parallel);
Verdict oracle_entails(const WeightedKB& kb, const Query& query, const Semantics& sem,
                       const DomainBound& bound, std::uint64_t budget,
                       ExecMode mode = ExecMode::Parallel);

// Derivations from a precomputed pass, shared with oracle_* above.
Verdict suite_bcs(const OracleSuite& suite, const ExtendedCost& k, const DomainBound& bound);
Verdict suite_entails(const OracleSuite& suite, std::size_t query_index, const Semantics& sem,
                      const DomainBound& bound);

// ---------------------------------------------------------------------------
// Weight-maximal repairs

// ABox subsets consistent with the TBox that maximize the total assertion
// weight. Requires every TBox weight infinite, a satisfiable TBox and finite
// ABox weights.
std::vector<std::vector<Assertion>> enumerate_w_repairs(const WeightedKB& kb,
                                                        const DomainBound& bound,
                                                        const SearchOptions& options = {});
bool ar_entails(const WeightedKB& kb, const Query& query, const DomainBound& bound,
                const SearchOptions& options = {});
bool brave_entails(const WeightedKB& kb, const Query& query, const DomainBound& bound,
                   const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Reduction generators and their independent solvers

struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // normalized u < v
};

Graph make_graph(std::size_t vertex_count,
                 std::vector<std::pair<std::size_t, std::size_t>> edges);
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

// Decision by backtracking vertex coloring; shares nothing with the reasoner.
bool graph_3colorable(const Graph& g);

// All maximum independent sets as vertex bitmasks, by subset enumeration.
std::vector<std::uint64_t> maximum_independent_sets(const Graph& g);

struct TwoTwoSlot {
  bool is_constant = false;
  bool constant_value = false;
  std::size_t var = 0;  // 0-based, meaningful when !is_constant

  static TwoTwoSlot variable(std::size_t v) { return {false, false, v}; }
  static TwoTwoSlot constant(bool value) { return {true, value, 0}; }
};

// Exactly two positive and two negative literal slots per clause.
struct TwoTwoClause {
  TwoTwoSlot pos1, pos2, neg1, neg2;
};

struct TwoTwoFormula {
  std::size_t var_count = 0;
  std::vector<TwoTwoClause> clauses;
};

TwoTwoFormula parse_two_two(const std::string& text);
std::string serialize_two_two(const TwoTwoFormula& f);

// Assignment encoded with variable 1 as the most significant bit.
bool satisfies_two_two(const TwoTwoFormula& f, std::uint64_t assignment);
std::optional<std::uint64_t> lexmax_assignment(const TwoTwoFormula& f);

struct ThreeColInstance {
  WeightedKB kb;
  ExtendedCost expected_k = ExtendedCost::fin_u64(3);
};

// Graph 3-colorability as bounded-cost satisfiability at k = 3.
ThreeColInstance gen_3col(const Graph& g);

// Maximum-independent-set membership as opt-cost entailment of Goal(w) /
// NoGoal(w).
WeightedKB gen_independent_set(const Graph& g, std::size_t w);

// Lexicographically maximum satisfying assignment via prioritized weights;
// requires a satisfiable formula.
WeightedKB gen_lexmax(const TwoTwoFormula& f);
Query lexmax_query(std::size_t var_index);  // Tp(x_<1-based index>)

WeightedKB visa_fixture();

// ---------------------------------------------------------------------------
// Random instances for the property and agreement suites

// Tiny WKB sized so that exhaustive enumeration stays within `max_points`
// raw interpretations across domain sizes up to the returned anon limit;
// skewed toward conflicting assertions so positive optimal costs are common.
struct RandomInstance {
  WeightedKB kb;
  std::size_t anon_limit = 0;
};

RandomInstance random_tiny_wkb(std::mt19937_64& rng, std::uint64_t max_points = 150'000);

Query random_ground_iq(const WeightedKB& kb, std::mt19937_64& rng);
Query random_bcq(const WeightedKB& kb, std::mt19937_64& rng);

Interpretation random_interpretation(std::mt19937_64& rng, const std::vector<std::string>& named,
                                     const InterpSignature& sig, std::size_t max_anon);

Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices);
TwoTwoFormula random_two_two(std::mt19937_64& rng, std::size_t max_vars, std::size_t max_clauses);

}  // namespace wkb::bench

#endif  // WKB_BENCH_HPP
