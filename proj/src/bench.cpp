#include "wkb/bench.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

namespace wkb::bench {

// ---------------------------------------------------------------------------
// Enumeration over a packed bit layout: concept bits first (per concept,
// per element), then role bits (per role, row-major pairs).

namespace {

std::size_t bits_for(std::size_t n, const InterpSignature& sig) {
  return n * sig.concept_names.size() + n * n * sig.role_names.size();
}

Interpretation decode_point(std::uint64_t point, const std::vector<std::string>& named,
                            std::size_t anon, const InterpSignature& sig) {
  const std::size_t n = named.size() + anon;
  Interpretation out(named, anon);
  std::size_t bit = 0;
  for (const auto& name : sig.concept_names) {
    ElemSet ext(n);
    for (std::size_t e = 0; e < n; ++e, ++bit)
      if ((point >> bit) & 1) ext.set(e);
    if (ext.any()) out.set_concept(name, std::move(ext));
  }
  for (const auto& name : sig.role_names) {
    RoleExtension ext(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++bit)
        if ((point >> bit) & 1) {
          ext.succ[i].set(j);
          any = true;
        }
    if (any) out.set_role(name, std::move(ext));
  }
  return out;
}

// Remaps a point under a permutation of the anonymous elements.
std::uint64_t permute_point(std::uint64_t point, std::size_t named_count, std::size_t n,
                            const InterpSignature& sig, const std::vector<std::size_t>& perm) {
  auto image = [&](std::size_t e) {
    return e < named_count ? e : named_count + perm[e - named_count];
  };
  std::uint64_t out = 0;
  std::size_t bit = 0;
  const std::size_t cbase = 0;
  (void)cbase;
  for (std::size_t c = 0; c < sig.concept_names.size(); ++c)
    for (std::size_t e = 0; e < n; ++e, ++bit)
      if ((point >> bit) & 1)
        out |= std::uint64_t(1) << (c * n + image(e));
  const std::size_t role_base = sig.concept_names.size() * n;
  for (std::size_t r = 0; r < sig.role_names.size(); ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++bit)
        if ((point >> bit) & 1)
          out |= std::uint64_t(1) << (role_base + r * n * n + image(i) * n + image(j));
  return out;
}

bool is_canonical(std::uint64_t point, std::size_t named_count, std::size_t anon, std::size_t n,
                  const InterpSignature& sig) {
  if (anon < 2) return true;
  if (sig.concept_names.empty() && sig.role_names.empty()) return true;
  std::vector<std::size_t> perm(anon);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (permute_point(point, named_count, n, sig, perm) < point) return false;
  }
  return true;
}

}  // namespace

BigInt enumeration_count(std::size_t named_count, const InterpSignature& sig,
                         std::size_t anon_limit) {
  BigInt total = 0;
  for (std::size_t anon = 0; anon <= anon_limit; ++anon) {
    if (named_count + anon == 0) continue;
    total += BigInt(1) << bits_for(named_count + anon, sig);
  }
  return total;
}

void enumerate_interpretations(const std::vector<std::string>& named, const InterpSignature& sig,
                               std::size_t anon_limit, std::uint64_t budget,
                               const std::function<bool(const Interpretation&)>& yield) {
  BigInt total = enumeration_count(named.size(), sig, anon_limit);
  if (total > BigInt(budget)) throw BudgetExceededError(total);
  for (std::size_t anon = 0; anon <= anon_limit; ++anon) {
    const std::size_t n = named.size() + anon;
    if (n == 0) continue;
    const std::size_t bits = bits_for(n, sig);
    const std::uint64_t points = std::uint64_t(1) << bits;
    for (std::uint64_t point = 0; point < points; ++point) {
      if (!is_canonical(point, named.size(), anon, n, sig)) continue;
      if (!yield(decode_point(point, named, anon, sig))) return;
    }
  }
}

// ---------------------------------------------------------------------------
// Oracle pass

namespace {

struct PointEvaluator {
  const WeightedKB& kb;
  const std::vector<Query>& queries;
  std::vector<Concept> violation_concepts;

  explicit PointEvaluator(const WeightedKB& kb, const std::vector<Query>& queries)
      : kb(kb), queries(queries) {
    for (const auto& ax : kb.tbox) violation_concepts.push_back(violation_concept(ax.inclusion));
  }

  void accumulate(const Interpretation& interp, OracleSuite& suite) const {
    std::vector<ElemSet> vio = concept_extensions(interp, violation_concepts);
    ExtendedCost cost = ExtendedCost::zero();
    for (std::size_t i = 0; i < kb.tbox.size(); ++i)
      cost += cost_scale(kb.tbox[i].weight, vio[i].count());
    for (const auto& wa : kb.abox)
      if (!satisfies_assertion(interp, wa.assertion))
        cost += ExtendedCost::of_weight(wa.weight);

    if (cost < suite.min_cost) suite.min_cost = cost;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      bool sat = satisfies_bcq(interp, queries[qi]);
      ExtendedCost& slot = sat ? suite.min_satisfying[qi] : suite.min_avoiding[qi];
      if (cost < slot) slot = cost;
    }
  }
};

void merge_suites(OracleSuite& into, const OracleSuite& from) {
  if (from.min_cost < into.min_cost) into.min_cost = from.min_cost;
  for (std::size_t i = 0; i < into.min_satisfying.size(); ++i) {
    if (from.min_satisfying[i] < into.min_satisfying[i])
      into.min_satisfying[i] = from.min_satisfying[i];
    if (from.min_avoiding[i] < into.min_avoiding[i])
      into.min_avoiding[i] = from.min_avoiding[i];
  }
}

OracleSuite fresh_suite(std::size_t query_count) {
  OracleSuite s;
  s.min_satisfying.assign(query_count, ExtendedCost::inf());
  s.min_avoiding.assign(query_count, ExtendedCost::inf());
  return s;
}

}  // namespace

OracleSuite oracle_pass(const WeightedKB& kb, const std::vector<Query>& queries,
                        const DomainBound& bound, std::uint64_t budget, ExecMode mode) {
  std::vector<std::string> named = kb.individuals();
  InterpSignature sig = InterpSignature::of(kb);
  for (const auto& q : queries)
    for (const auto& atom : q.atoms) {
      auto& names = atom.is_role ? sig.role_names : sig.concept_names;
      if (std::find(names.begin(), names.end(), atom.predicate) == names.end())
        names.push_back(atom.predicate);
    }

  BigInt total = enumeration_count(named.size(), sig, bound.anon_limit);
  if (total > BigInt(budget)) throw BudgetExceededError(total);

  PointEvaluator evaluator(kb, queries);
  OracleSuite suite = fresh_suite(queries.size());

  for (std::size_t anon = 0; anon <= bound.anon_limit; ++anon) {
    const std::size_t n = named.size() + anon;
    if (n == 0) continue;
    const std::uint64_t points = std::uint64_t(1) << bits_for(n, sig);
    if (mode == ExecMode::Serial) {
      for (std::uint64_t point = 0; point < points; ++point)
        evaluator.accumulate(decode_point(point, named, anon, sig), suite);
    } else {
#pragma omp parallel
      {
        OracleSuite local = fresh_suite(queries.size());
#pragma omp for schedule(static)
        for (std::uint64_t point = 0; point < points; ++point)
          evaluator.accumulate(decode_point(point, named, anon, sig), local);
#pragma omp critical
        merge_suites(suite, local);
      }
    }
  }
  return suite;
}

Verdict suite_bcs(const OracleSuite& suite, const ExtendedCost& k, const DomainBound& bound) {
  Verdict v;
  v.answer = suite.min_cost <= k;
  v.complete = v.answer ? true : bound.theoretical_complete;
  return v;
}

Verdict suite_entails(const OracleSuite& suite, std::size_t query_index, const Semantics& sem,
                      const DomainBound& bound) {
  const ExtendedCost& min_sat = suite.min_satisfying[query_index];
  const ExtendedCost& min_avoid = suite.min_avoiding[query_index];
  Verdict v;
  switch (sem.kind) {
    case Semantics::Kind::PossibleBounded:
      v.answer = min_sat <= sem.k;
      v.complete = v.answer ? true : bound.theoretical_complete;
      return v;
    case Semantics::Kind::CertainBounded:
      v.answer = !(min_avoid <= sem.k);
      v.complete = v.answer ? bound.theoretical_complete : true;
      return v;
    case Semantics::Kind::CertainOpt:
    case Semantics::Kind::PossibleOpt: {
      if (suite.min_cost.is_infinite()) {
        v.answer = false;
        v.complete = bound.theoretical_complete;
        v.opt_infinite = true;
        v.opt_used = suite.min_cost;
        return v;
      }
      if (sem.kind == Semantics::Kind::PossibleOpt)
        v.answer = min_sat == suite.min_cost;
      else
        v.answer = !(min_avoid == suite.min_cost);
      // opt itself is only known within the bound
      v.complete = bound.theoretical_complete;
      v.opt_used = suite.min_cost;
      return v;
    }
  }
  throw Error("unreachable");
}

Verdict oracle_bcs(const WeightedKB& kb, const ExtendedCost& k, const DomainBound& bound,
                   std::uint64_t budget, ExecMode mode) {
  if (k.is_infinite()) {
    Verdict v;
    v.answer = true;
    v.complete = true;
    return v;
  }
  OracleSuite suite = oracle_pass(kb, {}, bound, budget, mode);
  return suite_bcs(suite, k, bound);
}

std::pair<ExtendedCost, bool> oracle_opt(const WeightedKB& kb, const DomainBound& bound,
                                         std::uint64_t budget, ExecMode mode) {
  OracleSuite suite = oracle_pass(kb, {}, bound, budget, mode);
  return {suite.min_cost, bound.theoretical_complete};
}

Verdict oracle_entails(const WeightedKB& kb, const Query& query, const Semantics& sem,
                       const DomainBound& bound, std::uint64_t budget, ExecMode mode) {
  std::vector<std::string> inds = kb.individuals();
  for (const auto& ind : query.individuals())
    if (std::find(inds.begin(), inds.end(), ind) == inds.end())
      throw UnknownQueryIndividualError(ind);
  OracleSuite suite = oracle_pass(kb, {query}, bound, budget, mode);
  return suite_entails(suite, 0, sem, bound);
}

// ---------------------------------------------------------------------------
// Weight-maximal repairs

namespace {

// {a} is always below Top; the axiom only forces a into the domain, which is
// how a subset KB keeps individuals whose assertions were dropped.
WeightedKB tbox_with_individuals(const WeightedKB& kb) {
  WeightedKB out;
  out.tbox = kb.tbox;
  std::set<std::string> present;
  for (const auto& ind : out.individuals()) present.insert(ind);
  for (const auto& ind : kb.individuals())
    if (!present.count(ind)) out.add_axiom(Concept::nominal(ind), Concept::top(), Weight::infinite());
  return out;
}

void check_repair_hypotheses(const WeightedKB& kb, const DomainBound& bound,
                             const SearchOptions& options) {
  for (const auto& ax : kb.tbox)
    if (!ax.weight.is_infinite())
      throw HypothesisViolationError("repair semantics requires infinite TBox weights");
  for (const auto& wa : kb.abox)
    if (wa.weight.is_infinite())
      throw HypothesisViolationError("repair semantics requires finite ABox weights");
  WeightedKB tbox_only;
  tbox_only.tbox = kb.tbox;
  if (!find_interpretation(tbox_only, ExtendedCost::zero(), QueryConstraint::none(), bound,
                           options)
           .found())
    throw HypothesisViolationError("TBox has no model within the bound");
}

std::vector<std::vector<Assertion>> repairs_impl(const WeightedKB& kb, const DomainBound& bound,
                                                 const SearchOptions& options) {
  check_repair_hypotheses(kb, bound, options);
  if (kb.abox.size() > 24) throw BudgetExceededError(BigInt(1) << kb.abox.size());

  const std::uint64_t subsets = std::uint64_t(1) << kb.abox.size();
  WeightedKB base = tbox_with_individuals(kb);
  std::vector<std::vector<Assertion>> best;
  BigInt best_weight = -1;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    WeightedKB candidate = base;
    BigInt weight = 0;
    std::vector<Assertion> subset;
    for (std::size_t i = 0; i < kb.abox.size(); ++i) {
      if (!((mask >> i) & 1)) continue;
      candidate.add_assertion(kb.abox[i].assertion, Weight::infinite());
      weight += kb.abox[i].weight.value();
      subset.push_back(kb.abox[i].assertion);
    }
    if (weight < best_weight) continue;
    if (!find_interpretation(candidate, ExtendedCost::zero(), QueryConstraint::none(), bound,
                             options)
             .found())
      continue;
    if (weight > best_weight) {
      best_weight = weight;
      best.clear();
    }
    best.push_back(std::move(subset));
  }
  return best;
}

bool repair_entails(const WeightedKB& kb, const std::vector<Assertion>& repair,
                    const Query& query, const DomainBound& bound,
                    const SearchOptions& options) {
  WeightedKB candidate = tbox_with_individuals(kb);
  for (const auto& a : repair) candidate.add_assertion(a, Weight::infinite());
  return !find_interpretation(candidate, ExtendedCost::zero(),
                              QueryConstraint::must_avoid(query), bound, options)
              .found();
}

}  // namespace

std::vector<std::vector<Assertion>> enumerate_w_repairs(const WeightedKB& kb,
                                                        const DomainBound& bound,
                                                        const SearchOptions& options) {
  return repairs_impl(kb, bound, options);
}

bool ar_entails(const WeightedKB& kb, const Query& query, const DomainBound& bound,
                const SearchOptions& options) {
  for (const auto& repair : repairs_impl(kb, bound, options))
    if (!repair_entails(kb, repair, query, bound, options)) return false;
  return true;
}

bool brave_entails(const WeightedKB& kb, const Query& query, const DomainBound& bound,
                   const SearchOptions& options) {
  for (const auto& repair : repairs_impl(kb, bound, options))
    if (repair_entails(kb, repair, query, bound, options)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Graphs

Graph make_graph(std::size_t vertex_count,
                 std::vector<std::pair<std::size_t, std::size_t>> edges) {
  Graph g;
  g.vertex_count = vertex_count;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : edges) {
    if (u == v) throw Error("self-loops are not allowed");
    if (u >= vertex_count || v >= vertex_count) throw Error("edge endpoint out of range");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) throw Error("duplicate edge");
    g.edges.emplace_back(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::size_t n;
  if (!(in >> n)) throw Error("graph file: missing vertex count");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  return make_graph(n, std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
  return out.str();
}

bool graph_3colorable(const Graph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertex_count);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> color(g.vertex_count, -1);
  std::function<bool(std::size_t)> go = [&](std::size_t v) {
    if (v == g.vertex_count) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (std::size_t u : adj[v])
        if (color[u] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      color[v] = c;
      if (go(v + 1)) return true;
      color[v] = -1;
    }
    return false;
  };
  return go(0);
}

std::vector<std::uint64_t> maximum_independent_sets(const Graph& g) {
  if (g.vertex_count > 25) throw Error("independent-set enumeration capped at 25 vertices");
  std::vector<std::uint64_t> best;
  std::size_t best_size = 0;
  const std::uint64_t subsets = std::uint64_t(1) << g.vertex_count;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    bool independent = true;
    for (const auto& [u, v] : g.edges)
      if (((mask >> u) & 1) && ((mask >> v) & 1)) {
        independent = false;
        break;
      }
    if (!independent) continue;
    std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size > best_size) {
      best_size = size;
      best.clear();
    }
    if (size == best_size) best.push_back(mask);
  }
  return best;
}

// ---------------------------------------------------------------------------
// 2+2 formulas

TwoTwoFormula parse_two_two(const std::string& text) {
  std::istringstream in(text);
  TwoTwoFormula f;
  std::size_t m;
  if (!(in >> f.var_count >> m)) throw Error("formula file: missing variable/clause counts");
  auto read_slot = [&]() {
    std::string token;
    if (!(in >> token)) throw Error("formula file: missing clause slot");
    if (token == "T") return TwoTwoSlot::constant(true);
    if (token == "F") return TwoTwoSlot::constant(false);
    std::size_t idx = std::stoul(token);
    if (idx == 0 || idx > f.var_count) throw Error("formula file: variable index out of range");
    return TwoTwoSlot::variable(idx - 1);
  };
  for (std::size_t j = 0; j < m; ++j) {
    TwoTwoClause clause;
    clause.pos1 = read_slot();
    clause.pos2 = read_slot();
    clause.neg1 = read_slot();
    clause.neg2 = read_slot();
    f.clauses.push_back(clause);
  }
  return f;
}

std::string serialize_two_two(const TwoTwoFormula& f) {
  std::ostringstream out;
  out << f.var_count << " " << f.clauses.size() << "\n";
  auto slot = [&](const TwoTwoSlot& s) -> std::string {
    if (s.is_constant) return s.constant_value ? "T" : "F";
    return std::to_string(s.var + 1);
  };
  for (const auto& c : f.clauses)
    out << slot(c.pos1) << " " << slot(c.pos2) << " " << slot(c.neg1) << " " << slot(c.neg2)
        << "\n";
  return out.str();
}

namespace {

bool slot_value(const TwoTwoFormula& f, const TwoTwoSlot& s, std::uint64_t assignment) {
  if (s.is_constant) return s.constant_value;
  return (assignment >> (f.var_count - 1 - s.var)) & 1;  // x1 is the most significant bit
}

}  // namespace

bool satisfies_two_two(const TwoTwoFormula& f, std::uint64_t assignment) {
  for (const auto& c : f.clauses) {
    bool sat = slot_value(f, c.pos1, assignment) || slot_value(f, c.pos2, assignment) ||
               !slot_value(f, c.neg1, assignment) || !slot_value(f, c.neg2, assignment);
    if (!sat) return false;
  }
  return true;
}

std::optional<std::uint64_t> lexmax_assignment(const TwoTwoFormula& f) {
  if (f.var_count > 24) throw Error("assignment enumeration capped at 24 variables");
  const std::uint64_t count = std::uint64_t(1) << f.var_count;
  for (std::uint64_t a = count; a-- > 0;)
    if (satisfies_two_two(f, a)) return a;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reduction generators

ThreeColInstance gen_3col(const Graph& g) {
  ThreeColInstance out;
  WeightedKB& kb = out.kb;
  auto vertex = [](std::size_t v) { return "v" + std::to_string(v); };
  const std::vector<std::string> colors = {"c1", "c2", "c3"};
  const std::vector<std::string> color_concepts = {"C1", "C2", "C3"};

  for (int i = 0; i < 3; ++i) {
    Concept via_color = Concept::exists("R", Concept::name(color_concepts[i]));
    kb.add_axiom(Concept::conj(via_color, Concept::exists("E", via_color)), Concept::name("B"),
                 Weight::infinite());
  }
  kb.add_axiom(Concept::name("A"), Concept::exists("R", Concept::name("B")),
               Weight::infinite());
  kb.add_axiom(Concept::name("B"), Concept::bot(), Weight::finite(1));

  for (std::size_t v = 0; v < g.vertex_count; ++v)
    kb.add_assertion(Assertion::concept_assertion("A", vertex(v)), Weight::infinite());
  for (const auto& [u, v] : g.edges)
    kb.add_assertion(Assertion::role_assertion("E", vertex(u), vertex(v)), Weight::infinite());
  for (int i = 0; i < 3; ++i)
    kb.add_assertion(Assertion::concept_assertion(color_concepts[i], colors[i]),
                     Weight::infinite());
  for (int i = 0; i < 3; ++i)
    kb.add_assertion(Assertion::concept_assertion("B", colors[i]), Weight::infinite());
  return out;
}

WeightedKB gen_independent_set(const Graph& g, std::size_t w) {
  if (w >= g.vertex_count) throw Error("distinguished vertex out of range");
  WeightedKB kb;
  auto vertex = [](std::size_t v) { return "v" + std::to_string(v); };
  const std::vector<std::string> in_concepts = {"In1", "In2"};

  for (const auto& in : in_concepts)
    kb.add_axiom(Concept::conj(Concept::name(in), Concept::exists("Edge", Concept::name(in))),
                 Concept::bot(), Weight::infinite());
  for (const auto& in : in_concepts)
    kb.add_axiom(Concept::conj(Concept::name(in), Concept::name("Distinguish")),
                 Concept::name("Goal"), Weight::infinite());
  kb.add_axiom(Concept::conj(Concept::name("Goal"), Concept::name("NoGoal")), Concept::bot(),
               Weight::infinite());

  for (std::size_t v = 0; v < g.vertex_count; ++v)
    for (const auto& in : in_concepts)
      kb.add_assertion(Assertion::concept_assertion(in, vertex(v)), Weight::finite(1));
  for (const auto& [u, v] : g.edges)
    kb.add_assertion(Assertion::role_assertion("Edge", vertex(u), vertex(v)),
                     Weight::infinite());
  kb.add_assertion(Assertion::concept_assertion("Distinguish", vertex(w)), Weight::infinite());
  kb.add_assertion(Assertion::concept_assertion("NoGoal", vertex(w)), Weight::finite(1));
  return kb;
}

WeightedKB gen_lexmax(const TwoTwoFormula& f) {
  if (!lexmax_assignment(f)) throw UnsatisfiableInputError("2+2 formula is unsatisfiable");
  const std::size_t n = f.var_count;
  const std::size_t m = f.clauses.size();
  const std::uint64_t u = std::max<std::uint64_t>(2 * n, m) + 1;

  // priority weights u^(n+2-i); inputs beyond 64 bits are rejected
  auto power = [&](std::size_t exponent) {
    BigInt value = 1;
    for (std::size_t i = 0; i < exponent; ++i) value *= u;
    if (value > BigInt(UINT64_MAX))
      throw Error("priority weight exceeds the 64-bit input cap");
    return Weight::finite(static_cast<std::uint64_t>(value));
  };

  auto var_name = [](std::size_t v) { return "x" + std::to_string(v + 1); };
  auto clause_name = [](std::size_t j) { return "c" + std::to_string(j + 1); };
  auto slot_individual = [&](const TwoTwoSlot& s) {
    if (s.is_constant) return std::string(s.constant_value ? "t" : "f");
    return var_name(s.var);
  };

  WeightedKB kb;
  kb.add_axiom(Concept::conj(Concept::name("F"), Concept::name("T")), Concept::bot(),
               Weight::infinite());
  kb.add_axiom(Concept::conj(Concept::name("F"), Concept::name("Tp")), Concept::bot(),
               Weight::infinite());
  Concept bad_clause = Concept::conj(
      Concept::conj(Concept::exists("P1", Concept::name("F")),
                    Concept::exists("P2", Concept::name("F"))),
      Concept::conj(Concept::exists("N1", Concept::name("T")),
                    Concept::exists("N2", Concept::name("T"))));
  kb.add_axiom(Concept::exists("S", bad_clause), Concept::bot(), Weight::infinite());

  for (std::size_t j = 0; j < m; ++j)
    kb.add_assertion(Assertion::role_assertion("S", "phi", clause_name(j)), power(n));
  for (std::size_t j = 0; j < m; ++j) {
    const TwoTwoClause& c = f.clauses[j];
    kb.add_assertion(
        Assertion::role_assertion("P1", clause_name(j), slot_individual(c.pos1)),
        Weight::infinite());
    kb.add_assertion(
        Assertion::role_assertion("P2", clause_name(j), slot_individual(c.pos2)),
        Weight::infinite());
    kb.add_assertion(
        Assertion::role_assertion("N1", clause_name(j), slot_individual(c.neg1)),
        Weight::infinite());
    kb.add_assertion(
        Assertion::role_assertion("N2", clause_name(j), slot_individual(c.neg2)),
        Weight::infinite());
  }
  for (std::size_t i = 0; i < n; ++i) {
    kb.add_assertion(Assertion::concept_assertion("F", var_name(i)), power(n + 1));
    kb.add_assertion(Assertion::concept_assertion("T", var_name(i)), power(n + 1));
    kb.add_assertion(Assertion::concept_assertion("Tp", var_name(i)), power(n - 1 - i));
  }
  kb.add_assertion(Assertion::concept_assertion("F", "f"), Weight::infinite());
  kb.add_assertion(Assertion::concept_assertion("T", "t"), Weight::infinite());
  return kb;
}

Query lexmax_query(std::size_t var_index) {
  Query q;
  q.atoms.push_back(QueryAtom::concept_atom(
      "Tp", Term::individual("x" + std::to_string(var_index))));
  return q;
}

WeightedKB visa_fixture() {
  WeightedKB kb;
  kb.add_axiom(Concept::conj(Concept::name("Visa"), Concept::name("NoVisa")), Concept::bot(),
               Weight::infinite());
  kb.add_axiom(Concept::conj(Concept::exists("hasNat", Concept::nominal("c")),
                             Concept::exists("hasNat", Concept::nominal("b"))),
               Concept::bot(), Weight::infinite());
  kb.add_axiom(Concept::forall("hasNat", Concept::negation(Concept::nominal("c"))),
               Concept::name("Visa"), Weight::finite(1));
  kb.add_assertion(Assertion::role_assertion("hasNat", "p", "b"), Weight::finite(1));
  kb.add_assertion(Assertion::concept_assertion("NoVisa", "p"), Weight::finite(2));
  return kb;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

template <typename T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[rng() % items.size()];
}

}  // namespace

RandomInstance random_tiny_wkb(std::mt19937_64& rng, std::uint64_t max_points) {
  static const std::vector<std::string> all_concepts = {"A", "B", "C"};
  static const std::vector<std::string> all_roles = {"R", "S"};
  static const std::vector<std::string> all_inds = {"a", "b", "c"};

  while (true) {
    std::size_t n_ind = 1 + rng() % 3;
    std::size_t n_con = 1 + rng() % 3;
    std::size_t n_rol = rng() % 3;
    std::vector<std::string> concepts(all_concepts.begin(), all_concepts.begin() + n_con);
    std::vector<std::string> roles(all_roles.begin(), all_roles.begin() + n_rol);
    std::vector<std::string> inds(all_inds.begin(), all_inds.begin() + n_ind);
    InterpSignature sig{concepts, roles};

    // query predicates may add one fresh concept name to the enumeration
    InterpSignature probe = sig;
    probe.concept_names.push_back("Qf");
    std::size_t anon_limit = 0;
    while (anon_limit < 2 &&
           enumeration_count(n_ind, probe, anon_limit + 1) <= BigInt(max_points))
      ++anon_limit;
    if (enumeration_count(n_ind, probe, anon_limit) > BigInt(max_points)) continue;

    WeightedKB kb;
    auto random_weight = [&]() {
      switch (rng() % 3) {
        case 0:
          return Weight::finite(1);
        case 1:
          return Weight::finite(2);
        default:
          return Weight::infinite();
      }
    };
    auto random_concept_expr = [&]() -> Concept {
      switch (rng() % 6) {
        case 0:
          return Concept::name(choose(rng, concepts));
        case 1:
          return Concept::conj(Concept::name(choose(rng, concepts)),
                               Concept::name(choose(rng, concepts)));
        case 2:
          return roles.empty() ? Concept::name(choose(rng, concepts))
                               : Concept::exists(choose(rng, roles),
                                                 Concept::name(choose(rng, concepts)));
        case 3:
          return Concept::negation(Concept::name(choose(rng, concepts)));
        case 4:
          return roles.empty() ? Concept::nominal(choose(rng, inds))
                               : Concept::forall(choose(rng, roles),
                                                 Concept::name(choose(rng, concepts)));
        default:
          return Concept::nominal(choose(rng, inds));
      }
    };

    std::size_t n_axioms = 1 + rng() % 4;
    for (std::size_t i = 0; i < n_axioms; ++i) {
      Concept lhs = random_concept_expr();
      // skew toward disjointness so inconsistent corners are common
      Concept rhs = rng() % 3 == 0 ? Concept::bot() : random_concept_expr();
      ConceptInclusion inclusion{lhs, rhs};
      bool dup = std::any_of(kb.tbox.begin(), kb.tbox.end(), [&](const WeightedAxiom& ax) {
        return ax.inclusion == inclusion;
      });
      if (!dup) kb.add_axiom(lhs, rhs, random_weight());
    }

    std::size_t n_assertions = 1 + rng() % 4;
    for (std::size_t i = 0; i < n_assertions; ++i) {
      // cluster on the first individual so assertions actually conflict
      const std::string& subject = rng() % 2 ? inds[0] : choose(rng, inds);
      Assertion a = (!roles.empty() && rng() % 3 == 0)
                        ? Assertion::role_assertion(choose(rng, roles), subject,
                                                    choose(rng, inds))
                        : Assertion::concept_assertion(choose(rng, concepts), subject);
      bool dup = std::any_of(kb.abox.begin(), kb.abox.end(), [&](const WeightedAssertion& wa) {
        return wa.assertion == a;
      });
      if (!dup) kb.add_assertion(a, random_weight());
    }
    return {std::move(kb), anon_limit};
  }
}

Query random_ground_iq(const WeightedKB& kb, std::mt19937_64& rng) {
  std::vector<std::string> inds = kb.individuals();
  std::vector<std::string> concepts = kb.concept_names();
  std::vector<std::string> roles = kb.role_names();
  Query q;
  bool fresh = rng() % 5 == 0;
  if (!roles.empty() && rng() % 3 == 0) {
    q.atoms.push_back(QueryAtom::role_atom(choose(rng, roles),
                                           Term::individual(choose(rng, inds)),
                                           Term::individual(choose(rng, inds))));
  } else {
    std::string predicate = fresh || concepts.empty() ? "Qf" : choose(rng, concepts);
    q.atoms.push_back(
        QueryAtom::concept_atom(predicate, Term::individual(choose(rng, inds))));
  }
  return q;
}

Query random_bcq(const WeightedKB& kb, std::mt19937_64& rng) {
  std::vector<std::string> inds = kb.individuals();
  std::vector<std::string> concepts = kb.concept_names();
  std::vector<std::string> roles = kb.role_names();
  const std::vector<std::string> vars = {"y0", "y1"};
  Query q;
  std::size_t n_atoms = 1 + rng() % 3;
  auto term = [&]() {
    return rng() % 2 ? Term::variable(vars[rng() % vars.size()])
                     : Term::individual(choose(rng, inds));
  };
  for (std::size_t i = 0; i < n_atoms; ++i) {
    if (!roles.empty() && rng() % 2 == 0)
      q.atoms.push_back(QueryAtom::role_atom(choose(rng, roles), term(), term()));
    else if (!concepts.empty())
      q.atoms.push_back(QueryAtom::concept_atom(choose(rng, concepts), term()));
  }
  if (q.atoms.empty())
    q.atoms.push_back(QueryAtom::concept_atom("Qf", Term::individual(choose(rng, inds))));
  return q;
}

Interpretation random_interpretation(std::mt19937_64& rng, const std::vector<std::string>& named,
                                     const InterpSignature& sig, std::size_t max_anon) {
  std::size_t anon = rng() % (max_anon + 1);
  if (named.empty() && anon == 0) anon = 1;
  Interpretation out(named, anon);
  const std::size_t n = out.domain_size();
  std::uint64_t density = 1 + rng() % 3;  // membership probability density/4
  auto flip = [&]() { return rng() % 4 < density; };
  for (const auto& name : sig.concept_names) {
    ElemSet ext(n);
    for (std::size_t e = 0; e < n; ++e)
      if (flip()) ext.set(e);
    if (ext.any()) out.set_concept(name, std::move(ext));
  }
  for (const auto& name : sig.role_names) {
    RoleExtension ext(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (flip()) {
          ext.succ[i].set(j);
          any = true;
        }
    if (any) out.set_role(name, std::move(ext));
  }
  return out;
}

Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices) {
  std::size_t n = 1 + rng() % max_vertices;
  std::uint64_t density = 1 + rng() % 3;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() % 4 < density) edges.emplace_back(u, v);
  return make_graph(n, std::move(edges));
}

TwoTwoFormula random_two_two(std::mt19937_64& rng, std::size_t max_vars,
                             std::size_t max_clauses) {
  TwoTwoFormula f;
  f.var_count = 2 + rng() % (max_vars - 1);
  std::size_t m = 1 + rng() % max_clauses;
  auto slot = [&]() {
    if (rng() % 5 == 0) return TwoTwoSlot::constant(rng() % 2 == 0);
    return TwoTwoSlot::variable(rng() % f.var_count);
  };
  for (std::size_t j = 0; j < m; ++j) f.clauses.push_back({slot(), slot(), slot(), slot()});
  return f;
}

}  // namespace wkb::bench
