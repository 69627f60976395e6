#ifndef WKB_CORE_HPP
#define WKB_CORE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Syntactic universe: concepts, axioms, assertions, weights, weighted
// knowledge bases and conjunctive queries, plus validation, fragment
// classification and the saturating cost arithmetic everything else is
// built on.

namespace wkb {

using BigInt = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownIndividualError : Error {
  explicit UnknownIndividualError(const std::string& name)
      : Error("unknown individual: " + name), individual(name) {}
  std::string individual;
};

struct UnknownNominalIndividualError : Error {
  explicit UnknownNominalIndividualError(const std::string& name)
      : Error("nominal refers to individual absent from the domain: " + name),
        individual(name) {}
  std::string individual;
};

// ---------------------------------------------------------------------------
// Symbols

enum class SymbolKind { ConceptName, RoleName, IndividualName };

// Identifiers admitted in user-facing knowledge bases.
bool is_valid_identifier(const std::string& text);

// ---------------------------------------------------------------------------
// Concepts

enum class ConceptKind : std::uint8_t {
  Name,     // concept name A
  Nominal,  // {a}
  Top,
  Bot,
  And,
  Or,
  Not,
  Exists,  // some R.C
  Forall,  // only R.C
};

// Immutable concept tree with value semantics. Nodes are shared, never
// mutated, and carry a precomputed structural hash so concepts can key
// hashed containers.
class Concept {
 public:
  Concept() : Concept(top()) {}

  static Concept name(std::string concept_name);
  static Concept nominal(std::string individual);
  static Concept top();
  static Concept bot();
  static Concept conj(Concept lhs, Concept rhs);
  static Concept disj(Concept lhs, Concept rhs);
  static Concept negation(Concept arg);
  static Concept exists(std::string role, Concept arg);
  static Concept forall(std::string role, Concept arg);

  ConceptKind kind() const { return node_->kind; }
  // Concept name for Name nodes, individual for Nominal nodes.
  const std::string& text() const { return node_->text; }
  const std::string& role() const { return node_->text; }
  const Concept& left() const { return node_->children[0]; }
  const Concept& right() const { return node_->children[1]; }
  const Concept& child() const { return node_->children[0]; }

  std::size_t hash() const { return node_->hash; }
  bool operator==(const Concept& other) const;
  bool operator!=(const Concept& other) const { return !(*this == other); }
  // Deterministic total order (by kind, then text/children).
  bool operator<(const Concept& other) const { return compare(other) < 0; }
  int compare(const Concept& other) const;

  // Identity of the underlying node; usable as a memoization key during a
  // single evaluation pass.
  const void* id() const { return node_.get(); }

  template <typename Fn>
  void for_each_subconcept(Fn&& fn) const {
    fn(*this);
    for (const auto& c : node_->children) c.for_each_subconcept(fn);
  }

 private:
  struct Node {
    ConceptKind kind;
    std::string text;  // concept name, nominal individual, or role name
    std::vector<Concept> children;
    std::size_t hash = 0;
  };

  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Concept make(ConceptKind kind, std::string text, std::vector<Concept> children);

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

// ---------------------------------------------------------------------------
// Axioms and assertions

struct ConceptInclusion {
  Concept lhs;
  Concept rhs;

  bool operator==(const ConceptInclusion& other) const {
    return lhs == other.lhs && rhs == other.rhs;
  }
};

enum class AssertionKind : std::uint8_t { Concept, Role };

struct Assertion {
  AssertionKind kind;
  std::string predicate;  // concept name or role name
  std::string subject;
  std::string object;  // role assertions only

  static Assertion concept_assertion(std::string concept_name, std::string individual) {
    return {AssertionKind::Concept, std::move(concept_name), std::move(individual), {}};
  }
  static Assertion role_assertion(std::string role, std::string subject, std::string object) {
    return {AssertionKind::Role, std::move(role), std::move(subject), std::move(object)};
  }

  bool operator==(const Assertion& other) const {
    return kind == other.kind && predicate == other.predicate && subject == other.subject &&
           object == other.object;
  }
};

// ---------------------------------------------------------------------------
// Weights and costs

// Axiom/assertion weight: a positive 64-bit integer or infinity. Zero is
// representable so that validate() can diagnose it instead of throwing.
class Weight {
 public:
  static Weight finite(std::uint64_t value) { return Weight(value, false); }
  static Weight infinite() { return Weight(0, true); }

  bool is_infinite() const { return infinite_; }
  std::uint64_t value() const { return value_; }

  bool operator==(const Weight& other) const {
    return infinite_ == other.infinite_ && value_ == other.value_;
  }

 private:
  Weight(std::uint64_t value, bool infinite) : value_(value), infinite_(infinite) {}
  std::uint64_t value_;
  bool infinite_;
};

// Saturating cost value: an unbounded non-negative integer or infinity.
// Addition saturates at infinity; finite values accumulate in arbitrary
// precision so no input can silently wrap.
class ExtendedCost {
 public:
  ExtendedCost() : value_(0), infinite_(false) {}

  static ExtendedCost fin(BigInt value) { return ExtendedCost(std::move(value), false); }
  static ExtendedCost fin_u64(std::uint64_t value) { return fin(BigInt(value)); }
  static ExtendedCost inf() { return ExtendedCost(BigInt(0), true); }
  static ExtendedCost zero() { return fin(BigInt(0)); }
  static ExtendedCost of_weight(const Weight& w) {
    return w.is_infinite() ? inf() : fin_u64(w.value());
  }

  bool is_infinite() const { return infinite_; }
  const BigInt& value() const { return value_; }

  bool operator==(const ExtendedCost& other) const {
    if (infinite_ || other.infinite_) return infinite_ == other.infinite_;
    return value_ == other.value_;
  }
  bool operator!=(const ExtendedCost& other) const { return !(*this == other); }
  bool operator<(const ExtendedCost& other) const {
    if (infinite_) return false;
    if (other.infinite_) return true;
    return value_ < other.value_;
  }
  bool operator<=(const ExtendedCost& other) const { return *this < other || *this == other; }
  bool operator>(const ExtendedCost& other) const { return other < *this; }
  bool operator>=(const ExtendedCost& other) const { return other <= *this; }

  ExtendedCost& operator+=(const ExtendedCost& other) {
    if (other.infinite_) infinite_ = true;
    if (!infinite_) value_ += other.value_;
    return *this;
  }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }

 private:
  ExtendedCost(BigInt value, bool infinite) : value_(std::move(value)), infinite_(infinite) {}
  BigInt value_;
  bool infinite_;
};

ExtendedCost cost_add(const ExtendedCost& a, const ExtendedCost& b);
// w * n, with the empty-sum convention cost_scale(inf, 0) == fin(0).
ExtendedCost cost_scale(const Weight& w, std::uint64_t n);

// ---------------------------------------------------------------------------
// Weighted knowledge bases

struct WeightedAxiom {
  ConceptInclusion inclusion;
  Weight weight;
};

struct WeightedAssertion {
  Assertion assertion;
  Weight weight;
};

struct WeightedKB {
  std::vector<WeightedAxiom> tbox;
  std::vector<WeightedAssertion> abox;

  WeightedKB& add_axiom(Concept lhs, Concept rhs, Weight w) {
    tbox.push_back({{std::move(lhs), std::move(rhs)}, w});
    return *this;
  }
  WeightedKB& add_assertion(Assertion a, Weight w) {
    abox.push_back({std::move(a), w});
    return *this;
  }

  // Individuals in first-occurrence order (TBox nominals, then ABox).
  std::vector<std::string> individuals() const;
  std::vector<std::string> concept_names() const;
  std::vector<std::string> role_names() const;
};

struct Diagnostic {
  std::string location;  // e.g. "tbox[2]"
  std::string message;
};

// Empty result iff namespaces are disjoint, weights positive, identifiers
// well-formed and no duplicate axiom/assertion occurs.
std::vector<Diagnostic> validate(const WeightedKB& kb);

enum class Fragment { ELBot, ALCO };

Fragment fragment_of(const std::vector<WeightedAxiom>& tbox);
inline Fragment fragment_of(const WeightedKB& kb) { return fragment_of(kb.tbox); }

// Closure of the concepts occurring in the TBox under subtrees, deduplicated
// structurally, in deterministic order.
std::vector<Concept> subconcepts(const std::vector<WeightedAxiom>& tbox);
inline std::vector<Concept> subconcepts(const WeightedKB& kb) { return subconcepts(kb.tbox); }

// lhs and not(rhs); its extension is the axiom's violation set.
Concept violation_concept(const ConceptInclusion& inclusion);

// Sub-KB of the infinite-weight axioms and assertions.
WeightedKB k_infty(const WeightedKB& kb);

// ---------------------------------------------------------------------------
// Queries

struct Term {
  bool is_variable;
  std::string text;

  static Term variable(std::string name) { return {true, std::move(name)}; }
  static Term individual(std::string name) { return {false, std::move(name)}; }

  bool operator==(const Term& other) const {
    return is_variable == other.is_variable && text == other.text;
  }
  bool operator<(const Term& other) const {
    if (is_variable != other.is_variable) return is_variable < other.is_variable;
    return text < other.text;
  }
};

struct QueryAtom {
  bool is_role;  // false: concept atom Name(t); true: role atom Name(t, t')
  std::string predicate;
  Term first;
  Term second;  // role atoms only

  static QueryAtom concept_atom(std::string name, Term t) {
    return {false, std::move(name), std::move(t), Term::individual("")};
  }
  static QueryAtom role_atom(std::string name, Term t1, Term t2) {
    return {true, std::move(name), std::move(t1), std::move(t2)};
  }
};

struct Query {
  std::vector<std::string> answer_vars;
  std::vector<QueryAtom> atoms;

  bool is_boolean() const { return answer_vars.empty(); }
  bool is_instance_query() const { return is_boolean() && atoms.size() == 1; }

  // All variable names, answer variables first, then existential ones in
  // first-occurrence order.
  std::vector<std::string> variables() const;
  std::vector<std::string> existential_variables() const;
  std::vector<std::string> individuals() const;

  // Replaces answer variables by the given individuals, yielding a BCQ.
  Query instantiate(const std::vector<std::string>& tuple) const;
};

}  // namespace wkb

#endif  // WKB_CORE_HPP
