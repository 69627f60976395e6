#include "wkb/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace wkb {

DomainBound completeness_bound(const WeightedKB& kb, BoundProblem problem, std::uint64_t cap) {
  if (problem == BoundProblem::Certain) {
    // no certified bound is computed for the refutation side
    return {cap, false};
  }
  std::size_t s = subconcepts(kb.tbox).size();
  if (s >= 63) return {cap, false};
  std::uint64_t theoretical = std::uint64_t(1) << s;
  if (theoretical <= cap) return {theoretical, true};
  return {cap, false};
}

namespace {

struct AtomRef {
  bool is_role;
  int pred;
  int a;
  int b;  // role atoms only
};

struct ScoredInclusion {
  Concept vio;
  ExtendedCost unit;         // cost per violation beyond the allowance
  std::uint64_t allowance;   // violations tolerated for free
};

struct ScoredAssertion {
  AtomRef atom;
  ExtendedCost unit;
};

struct Bounds3 {
  ElemSet must, may;
};

ExtendedCost inclusion_cost(const ScoredInclusion& item, std::uint64_t count) {
  if (count <= item.allowance) return ExtendedCost::zero();
  if (item.unit.is_infinite()) return ExtendedCost::inf();
  return ExtendedCost::fin(item.unit.value() * (count - item.allowance));
}

// Branch-and-bound over membership literals at a fixed domain size. The
// three-valued state keeps decided-true and decided-false atoms apart;
// everything undecided is open to both branches. Each node probes the
// zero completion (undecided atoms set to false) and, when it fails,
// branches on an atom drawn from the support of one of its defects.
class Solver {
 public:
  Solver(std::vector<std::string> named, std::vector<std::string> concept_names,
         std::vector<std::string> role_names, std::vector<ScoredInclusion> inclusions,
         std::vector<ScoredAssertion> assertions, ExtendedCost budget,
         const QueryConstraint& constraint, const SearchOptions& options, SearchStats* stats)
      : named_(std::move(named)),
        concept_names_(std::move(concept_names)),
        role_names_(std::move(role_names)),
        inclusions_(std::move(inclusions)),
        assertions_(std::move(assertions)),
        budget_(std::move(budget)),
        constraint_(constraint),
        options_(options),
        stats_(stats) {}

  std::optional<Interpretation> solve(std::size_t anon_count) {
    n_ = named_.size() + anon_count;
    if (n_ == 0) return std::nullopt;
    anon_count_ = anon_count;
    ctrue_.assign(concept_names_.size(), ElemSet(n_));
    cfalse_.assign(concept_names_.size(), ElemSet(n_));
    rtrue_.assign(role_names_.size(), std::vector<ElemSet>(n_, ElemSet(n_)));
    rfalse_.assign(role_names_.size(), std::vector<ElemSet>(n_, ElemSet(n_)));
    witness_.reset();

    // an assertion with infinite weight can never be violated within a
    // finite budget, so its atom is decided up front
    if (!options_.disable_pruning && !budget_.is_infinite()) {
      for (const auto& item : assertions_)
        if (item.unit.is_infinite()) assign(item.atom, true);
    }
    std::uint64_t before = nodes_;
    try {
      dfs();
    } catch (...) {
      if (stats_) stats_->add(nodes_ - before);
      throw;
    }
    if (stats_) stats_->add(nodes_ - before);
    return witness_;
  }

 private:
  bool decided(const AtomRef& ref) const {
    if (ref.is_role)
      return rtrue_[ref.pred][ref.a].test(ref.b) || rfalse_[ref.pred][ref.a].test(ref.b);
    return ctrue_[ref.pred].test(ref.a) || cfalse_[ref.pred].test(ref.a);
  }

  void assign(const AtomRef& ref, bool value) {
    if (ref.is_role)
      (value ? rtrue_ : rfalse_)[ref.pred][ref.a].set(ref.b);
    else
      (value ? ctrue_ : cfalse_)[ref.pred].set(ref.a);
  }

  void retract(const AtomRef& ref, bool value) {
    if (ref.is_role)
      (value ? rtrue_ : rfalse_)[ref.pred][ref.a].reset(ref.b);
    else
      (value ? ctrue_ : cfalse_)[ref.pred].reset(ref.a);
  }

  int concept_index(const std::string& name) const {
    auto it = std::find(concept_names_.begin(), concept_names_.end(), name);
    return it == concept_names_.end() ? -1 : int(it - concept_names_.begin());
  }
  int role_index(const std::string& name) const {
    auto it = std::find(role_names_.begin(), role_names_.end(), name);
    return it == role_names_.end() ? -1 : int(it - role_names_.begin());
  }

  std::size_t named_id(const std::string& individual) const {
    for (std::size_t i = 0; i < named_.size(); ++i)
      if (named_[i] == individual) return i;
    throw UnknownNominalIndividualError(individual);
  }

  // --- three-valued and zero-completion evaluation -------------------------

  const Bounds3& eval3(const Concept& c) {
    auto it = memo3_.find(c.id());
    if (it != memo3_.end()) return it->second;
    Bounds3 out{ElemSet(n_), ElemSet(n_)};
    switch (c.kind()) {
      case ConceptKind::Name: {
        int idx = concept_index(c.text());
        if (idx >= 0) {
          out.must = ctrue_[idx];
          out.may = ~cfalse_[idx];
        }
        break;
      }
      case ConceptKind::Nominal: {
        std::size_t id = named_id(c.text());
        out.must.set(id);
        out.may.set(id);
        break;
      }
      case ConceptKind::Top:
        out.must.set();
        out.may.set();
        break;
      case ConceptKind::Bot:
        break;
      case ConceptKind::And: {
        const Bounds3& l = eval3(c.left());
        const Bounds3 r = eval3(c.right());
        out.must = l.must & r.must;
        out.may = l.may & r.may;
        break;
      }
      case ConceptKind::Or: {
        const Bounds3& l = eval3(c.left());
        const Bounds3 r = eval3(c.right());
        out.must = l.must | r.must;
        out.may = l.may | r.may;
        break;
      }
      case ConceptKind::Not: {
        const Bounds3& a = eval3(c.child());
        out.must = ~a.may;
        out.may = ~a.must;
        break;
      }
      case ConceptKind::Exists: {
        const Bounds3 a = eval3(c.child());
        int r = role_index(c.role());
        if (r >= 0) {
          for (std::size_t i = 0; i < n_; ++i) {
            if ((rtrue_[r][i] & a.must).any()) out.must.set(i);
            if (((~rfalse_[r][i]) & a.may).any()) out.may.set(i);
          }
        }
        break;
      }
      case ConceptKind::Forall: {
        const Bounds3 a = eval3(c.child());
        int r = role_index(c.role());
        out.must.set();
        out.may.set();
        if (r >= 0) {
          ElemSet not_must = ~a.must;
          ElemSet not_may = ~a.may;
          for (std::size_t i = 0; i < n_; ++i) {
            if (((~rfalse_[r][i]) & not_must).any()) out.must.reset(i);
            if ((rtrue_[r][i] & not_may).any()) out.may.reset(i);
          }
        }
        break;
      }
    }
    return memo3_.emplace(c.id(), std::move(out)).first->second;
  }

  // extension under the zero completion: undecided atoms read as false
  const ElemSet& evalz(const Concept& c) {
    auto it = memoz_.find(c.id());
    if (it != memoz_.end()) return it->second;
    ElemSet out(n_);
    switch (c.kind()) {
      case ConceptKind::Name: {
        int idx = concept_index(c.text());
        if (idx >= 0) out = ctrue_[idx];
        break;
      }
      case ConceptKind::Nominal:
        out.set(named_id(c.text()));
        break;
      case ConceptKind::Top:
        out.set();
        break;
      case ConceptKind::Bot:
        break;
      case ConceptKind::And:
        out = evalz(c.left()) & evalz(c.right());
        break;
      case ConceptKind::Or:
        out = evalz(c.left()) | evalz(c.right());
        break;
      case ConceptKind::Not:
        out = ~evalz(c.child());
        break;
      case ConceptKind::Exists: {
        ElemSet arg = evalz(c.child());
        int r = role_index(c.role());
        if (r >= 0)
          for (std::size_t i = 0; i < n_; ++i)
            if ((rtrue_[r][i] & arg).any()) out.set(i);
        break;
      }
      case ConceptKind::Forall: {
        ElemSet neg = ~evalz(c.child());
        int r = role_index(c.role());
        out.set();
        if (r >= 0)
          for (std::size_t i = 0; i < n_; ++i)
            if ((rtrue_[r][i] & neg).any()) out.reset(i);
        break;
      }
    }
    return memoz_.emplace(c.id(), std::move(out)).first->second;
  }

  // --- support walks --------------------------------------------------------
  // pick_to_falsify: e is in the zero-completion extension of c but not in
  // must(c); returns an undecided atom that can pull e out of c.
  // pick_to_satisfy: e is in may(c) but outside the zero-completion
  // extension; returns an undecided atom that can put e into c.

  std::optional<AtomRef> pick_to_falsify(const Concept& c, std::size_t e) {
    switch (c.kind()) {
      case ConceptKind::Name: {
        int idx = concept_index(c.text());
        if (idx < 0) return std::nullopt;
        AtomRef ref{false, idx, int(e), 0};
        if (!decided(ref)) return ref;
        return std::nullopt;
      }
      case ConceptKind::Nominal:
      case ConceptKind::Top:
      case ConceptKind::Bot:
        return std::nullopt;
      case ConceptKind::And: {
        for (const Concept* part : {&c.left(), &c.right()}) {
          if (!eval3(*part).must.test(e) && evalz(*part).test(e))
            if (auto ref = pick_to_falsify(*part, e)) return ref;
        }
        return std::nullopt;
      }
      case ConceptKind::Or: {
        for (const Concept* part : {&c.left(), &c.right()}) {
          if (evalz(*part).test(e) && !eval3(*part).must.test(e))
            if (auto ref = pick_to_falsify(*part, e)) return ref;
        }
        return std::nullopt;
      }
      case ConceptKind::Not:
        return pick_to_satisfy(c.child(), e);
      case ConceptKind::Exists: {
        int r = role_index(c.role());
        if (r < 0) return std::nullopt;
        const ElemSet& argz = evalz(c.child());
        const Bounds3& arg3 = eval3(c.child());
        for (std::size_t f = rtrue_[r][e].find_first(); f != ElemSet::npos;
             f = rtrue_[r][e].find_next(f)) {
          if (!argz.test(f)) continue;
          if (!arg3.must.test(f))
            if (auto ref = pick_to_falsify(c.child(), f)) return ref;
        }
        // an undecided edge to a witness can also be branched on
        for (std::size_t f = 0; f < n_; ++f) {
          AtomRef ref{true, r, int(e), int(f)};
          if (!decided(ref) && argz.test(f)) return ref;
        }
        return std::nullopt;
      }
      case ConceptKind::Forall: {
        // e not in must(only R.C): some possible successor may leave C
        int r = role_index(c.role());
        if (r < 0) return std::nullopt;
        const Bounds3& arg3 = eval3(c.child());
        for (std::size_t f = 0; f < n_; ++f) {
          if (rfalse_[r][e].test(f)) continue;  // edge ruled out
          if (arg3.must.test(f)) continue;
          AtomRef edge{true, r, int(e), int(f)};
          if (!decided(edge)) return edge;
          // edge is decided true; the zero completion keeps f inside C
          if (evalz(c.child()).test(f))
            if (auto ref = pick_to_falsify(c.child(), f)) return ref;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::optional<AtomRef> pick_to_satisfy(const Concept& c, std::size_t e) {
    switch (c.kind()) {
      case ConceptKind::Name: {
        int idx = concept_index(c.text());
        if (idx < 0) return std::nullopt;
        AtomRef ref{false, idx, int(e), 0};
        if (!decided(ref)) return ref;
        return std::nullopt;
      }
      case ConceptKind::Nominal:
      case ConceptKind::Top:
      case ConceptKind::Bot:
        return std::nullopt;
      case ConceptKind::And: {
        for (const Concept* part : {&c.left(), &c.right()}) {
          if (!evalz(*part).test(e) && eval3(*part).may.test(e))
            if (auto ref = pick_to_satisfy(*part, e)) return ref;
        }
        return std::nullopt;
      }
      case ConceptKind::Or: {
        for (const Concept* part : {&c.left(), &c.right()}) {
          if (eval3(*part).may.test(e) && !evalz(*part).test(e))
            if (auto ref = pick_to_satisfy(*part, e)) return ref;
        }
        return std::nullopt;
      }
      case ConceptKind::Not:
        return pick_to_falsify(c.child(), e);
      case ConceptKind::Exists: {
        int r = role_index(c.role());
        if (r < 0) return std::nullopt;
        const Bounds3& arg3 = eval3(c.child());
        for (std::size_t f = 0; f < n_; ++f) {
          if (rfalse_[r][e].test(f)) continue;
          if (!arg3.may.test(f)) continue;
          AtomRef edge{true, r, int(e), int(f)};
          if (!decided(edge)) return edge;
          if (!evalz(c.child()).test(f))
            if (auto ref = pick_to_satisfy(c.child(), f)) return ref;
        }
        return std::nullopt;
      }
      case ConceptKind::Forall: {
        // some decided successor currently escapes C under the zero completion
        int r = role_index(c.role());
        if (r < 0) return std::nullopt;
        const ElemSet& argz = evalz(c.child());
        const Bounds3& arg3 = eval3(c.child());
        for (std::size_t f = rtrue_[r][e].find_first(); f != ElemSet::npos;
             f = rtrue_[r][e].find_next(f)) {
          if (argz.test(f)) continue;
          if (arg3.may.test(f))
            if (auto ref = pick_to_satisfy(c.child(), f)) return ref;
        }
        // or an undecided edge could be removed: branching on it progresses too
        for (std::size_t f = 0; f < n_; ++f) {
          AtomRef edge{true, r, int(e), int(f)};
          if (!decided(edge) && !argz.test(f)) return edge;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  // --- helpers over the current state ---------------------------------------

  Interpretation build(bool use_may) const {
    Interpretation out(named_, anon_count_);
    for (std::size_t i = 0; i < concept_names_.size(); ++i) {
      ElemSet ext = use_may ? ~cfalse_[i] : ctrue_[i];
      if (ext.any()) out.set_concept(concept_names_[i], std::move(ext));
    }
    for (std::size_t r = 0; r < role_names_.size(); ++r) {
      RoleExtension ext(n_);
      bool any = false;
      for (std::size_t i = 0; i < n_; ++i) {
        ext.succ[i] = use_may ? ~rfalse_[r][i] : rtrue_[r][i];
        any = any || ext.succ[i].any();
      }
      if (any) out.set_role(role_names_[r], std::move(ext));
    }
    return out;
  }

  bool assertion_holds_z(const ScoredAssertion& item) const {
    const AtomRef& ref = item.atom;
    if (ref.is_role) return rtrue_[ref.pred][ref.a].test(ref.b);
    return ctrue_[ref.pred].test(ref.a);
  }

  bool assertion_violated_for_sure(const ScoredAssertion& item) const {
    const AtomRef& ref = item.atom;
    if (ref.is_role) return rfalse_[ref.pred][ref.a].test(ref.b);
    return cfalse_[ref.pred].test(ref.a);
  }

  std::optional<AtomRef> first_undecided() const {
    for (std::size_t i = 0; i < concept_names_.size(); ++i)
      for (std::size_t e = 0; e < n_; ++e) {
        AtomRef ref{false, int(i), int(e), 0};
        if (!decided(ref)) return ref;
      }
    for (std::size_t r = 0; r < role_names_.size(); ++r)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
          AtomRef ref{true, int(r), int(i), int(j)};
          if (!decided(ref)) return ref;
        }
    return std::nullopt;
  }

  // --- main recursion --------------------------------------------------------

  bool dfs() {
    if (++nodes_ > options_.node_budget) throw BudgetExhaustedError(nodes_);
    memo3_.clear();
    memoz_.clear();

    ExtendedCost lower = ExtendedCost::zero();
    ExtendedCost zcost = ExtendedCost::zero();
    for (const auto& item : assertions_) {
      if (assertion_violated_for_sure(item)) {
        lower += item.unit;
        zcost += item.unit;
      } else if (!assertion_holds_z(item)) {
        zcost += item.unit;
      }
    }
    for (const auto& item : inclusions_) {
      const Bounds3& b = eval3(item.vio);
      lower += inclusion_cost(item, b.must.count());
      zcost += inclusion_cost(item, evalz(item.vio).count());
    }
    if (!options_.disable_pruning && lower > budget_) return false;

    if (!options_.disable_pruning && constraint_.kind != QueryConstraint::Kind::None) {
      if (constraint_.kind == QueryConstraint::Kind::MustSatisfy) {
        if (!satisfies_bcq(build(/*use_may=*/true), constraint_.query)) return false;
      } else {
        if (satisfies_bcq(build(/*use_may=*/false), constraint_.query)) return false;
      }
    }

    // zero-completion probe: the all-false completion is itself a candidate
    bool zok = zcost <= budget_;
    std::optional<Interpretation> zinterp;
    if (zok && constraint_.kind != QueryConstraint::Kind::None) {
      zinterp = build(false);
      bool sat = satisfies_bcq(*zinterp, constraint_.query);
      zok = constraint_.kind == QueryConstraint::Kind::MustSatisfy ? sat : !sat;
    }
    if (zok) {
      witness_ = zinterp ? std::move(zinterp) : std::optional<Interpretation>(build(false));
      return true;
    }

    std::optional<AtomRef> pick;
    if (zcost > budget_) {
      for (const auto& item : assertions_) {
        const AtomRef& ref = item.atom;
        if (!decided(ref)) {
          pick = ref;
          break;
        }
      }
      if (!pick) {
        for (const auto& item : inclusions_) {
          const ElemSet& z = evalz(item.vio);
          const Bounds3& b = eval3(item.vio);
          if (inclusion_cost(item, z.count()) == inclusion_cost(item, b.must.count())) continue;
          ElemSet loose = z & ~b.must;
          for (std::size_t e = loose.find_first(); e != ElemSet::npos; e = loose.find_next(e)) {
            pick = pick_to_falsify(item.vio, e);
            if (pick) break;
          }
          if (pick) break;
        }
      }
    } else if (constraint_.kind == QueryConstraint::Kind::MustSatisfy) {
      // zero completion misses the query: branch on an open atom of some
      // potential match over the may structure
      auto match = find_match(build(true), constraint_.query);
      if (match) {
        for (const auto& atom : constraint_.query.atoms) {
          auto elem = [&](const Term& t) { return int(match->at(t)); };
          AtomRef ref = atom.is_role
                            ? AtomRef{true, role_index(atom.predicate), elem(atom.first),
                                      elem(atom.second)}
                            : AtomRef{false, concept_index(atom.predicate), elem(atom.first), 0};
          if (ref.pred >= 0 && !decided(ref)) {
            pick = ref;
            break;
          }
        }
      }
    }
    if (!pick) pick = first_undecided();
    if (!pick) return false;  // fully decided and the unique completion failed

    for (bool value : {true, false}) {
      assign(*pick, value);
      bool found = dfs();
      retract(*pick, value);
      if (found) return true;
    }
    return false;
  }

  std::vector<std::string> named_;
  std::vector<std::string> concept_names_;
  std::vector<std::string> role_names_;
  std::vector<ScoredInclusion> inclusions_;
  std::vector<ScoredAssertion> assertions_;
  ExtendedCost budget_;
  QueryConstraint constraint_;
  SearchOptions options_;
  SearchStats* stats_;

  std::size_t n_ = 0;
  std::size_t anon_count_ = 0;
  std::vector<ElemSet> ctrue_, cfalse_;
  std::vector<std::vector<ElemSet>> rtrue_, rfalse_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<const void*, Bounds3> memo3_;
  std::unordered_map<const void*, ElemSet> memoz_;
  std::optional<Interpretation> witness_;
};

void merge_names(std::vector<std::string>& into, const std::vector<std::string>& extra) {
  for (const auto& name : extra)
    if (std::find(into.begin(), into.end(), name) == into.end()) into.push_back(name);
}

void collect_query_names(const Query& q, std::vector<std::string>& concepts,
                         std::vector<std::string>& roles) {
  std::vector<std::string> c, r;
  for (const auto& atom : q.atoms) (atom.is_role ? r : c).push_back(atom.predicate);
  merge_names(concepts, c);
  merge_names(roles, r);
}

AtomRef assertion_atom(const Assertion& a, const std::vector<std::string>& concept_names,
                       const std::vector<std::string>& role_names,
                       const std::vector<std::string>& named) {
  auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
    return int(std::find(v.begin(), v.end(), s) - v.begin());
  };
  auto named_id = [&](const std::string& ind) {
    auto it = std::find(named.begin(), named.end(), ind);
    if (it == named.end()) throw UnknownIndividualError(ind);
    return int(it - named.begin());
  };
  if (a.kind == AssertionKind::Concept)
    return {false, index_of(concept_names, a.predicate), named_id(a.subject), 0};
  return {true, index_of(role_names, a.predicate), named_id(a.subject), named_id(a.object)};
}

SearchOutcome run_solver(Solver& solver, const DomainBound& bound, std::size_t named_count) {
  for (std::uint64_t anon = 0; anon <= bound.anon_limit; ++anon) {
    if (named_count + anon == 0) continue;  // domains are non-empty
    if (auto witness = solver.solve(anon)) return {std::move(witness), true};
  }
  return {std::nullopt, bound.theoretical_complete};
}

}  // namespace

SearchOutcome find_interpretation(const WeightedKB& kb, const ExtendedCost& k,
                                  const QueryConstraint& constraint, const DomainBound& bound,
                                  const SearchOptions& options, SearchStats* stats) {
  std::vector<std::string> named = kb.individuals();
  std::vector<std::string> concept_names = kb.concept_names();
  std::vector<std::string> role_names = kb.role_names();
  if (constraint.kind != QueryConstraint::Kind::None) {
    collect_query_names(constraint.query, concept_names, role_names);
    for (const auto& ind : constraint.query.individuals())
      if (std::find(named.begin(), named.end(), ind) == named.end())
        throw UnknownIndividualError(ind);
  }

  std::vector<ScoredInclusion> inclusions;
  for (const auto& ax : kb.tbox)
    inclusions.push_back(
        {violation_concept(ax.inclusion), ExtendedCost::of_weight(ax.weight), 0});
  std::vector<ScoredAssertion> assertions;
  for (const auto& wa : kb.abox)
    assertions.push_back({assertion_atom(wa.assertion, concept_names, role_names, named),
                          ExtendedCost::of_weight(wa.weight)});

  Solver solver(named, concept_names, role_names, std::move(inclusions), std::move(assertions),
                k, constraint, options, stats);
  return run_solver(solver, bound, named.size());
}

SearchOutcome find_config_model(const ConfiguredKB& ckb, const QueryConstraint& constraint,
                                const DomainBound& bound, const SearchOptions& options,
                                SearchStats* stats) {
  // collect the signature from the hard part plus the capped inclusions
  WeightedKB all = ckb.hard;
  for (const auto& [inclusion, cap] : ckb.caps) {
    (void)cap;
    all.add_axiom(inclusion.lhs, inclusion.rhs, Weight::infinite());
  }
  std::vector<std::string> named = all.individuals();
  std::vector<std::string> concept_names = all.concept_names();
  std::vector<std::string> role_names = all.role_names();
  if (constraint.kind != QueryConstraint::Kind::None) {
    collect_query_names(constraint.query, concept_names, role_names);
    for (const auto& ind : constraint.query.individuals())
      if (std::find(named.begin(), named.end(), ind) == named.end())
        throw UnknownIndividualError(ind);
  }

  std::vector<ScoredInclusion> inclusions;
  for (const auto& ax : ckb.hard.tbox)
    inclusions.push_back({violation_concept(ax.inclusion), ExtendedCost::inf(), 0});
  for (const auto& [inclusion, cap] : ckb.caps)
    inclusions.push_back({violation_concept(inclusion), ExtendedCost::inf(), cap});
  std::vector<ScoredAssertion> assertions;
  for (const auto& wa : ckb.hard.abox)
    assertions.push_back(
        {assertion_atom(wa.assertion, concept_names, role_names, named), ExtendedCost::inf()});

  Solver solver(named, concept_names, role_names, std::move(inclusions), std::move(assertions),
                ExtendedCost::zero(), constraint, options, stats);
  return run_solver(solver, bound, named.size());
}

std::pair<WeightedKB, std::vector<std::string>> extend_with_query(const WeightedKB& kb,
                                                                  const Query& query) {
  if (!query.is_boolean()) throw Error("extend_with_query expects a Boolean query");
  std::set<std::string> taken;
  for (const auto& ind : kb.individuals()) taken.insert(ind);
  for (const auto& ind : query.individuals()) taken.insert(ind);
  std::vector<std::string> fresh;
  std::size_t next = 0;
  for (std::size_t i = 0; i < query.existential_variables().size(); ++i) {
    std::string name;
    do {
      name = "_y" + std::to_string(next++);
    } while (taken.count(name));
    taken.insert(name);
    fresh.push_back(name);
  }
  return {kb, fresh};
}

Interpretation filtrate(const Interpretation& interp, const std::vector<WeightedAxiom>& tbox) {
  const std::vector<Concept> subs = subconcepts(tbox);
  const std::vector<ElemSet> exts = concept_extensions(interp, subs);
  const std::size_t named_count = interp.named_count();
  const std::size_t n = interp.domain_size();

  // membership pattern over the subconcepts, for anonymous elements only
  std::vector<std::vector<bool>> type_of(n);
  for (std::size_t e = named_count; e < n; ++e) {
    std::vector<bool> t(subs.size());
    for (std::size_t c = 0; c < subs.size(); ++c) t[c] = exts[c].test(e);
    type_of[e] = std::move(t);
  }

  std::vector<std::size_t> class_of(n, 0);
  std::vector<std::vector<std::size_t>> members;  // classes ordered by first member id
  std::map<std::vector<bool>, std::size_t> by_type;
  for (std::size_t e = named_count; e < n; ++e) {
    auto it = by_type.find(type_of[e]);
    if (it == by_type.end()) {
      it = by_type.emplace(type_of[e], members.size()).first;
      members.push_back({});
    }
    class_of[e] = it->second;
    members[it->second].push_back(e);
  }

  auto image = [&](std::size_t e) {
    return e < named_count ? e : named_count + class_of[e];
  };

  Interpretation out(interp.named(), members.size());
  for (const auto& [name, ext] : interp.concept_map()) {
    ElemSet new_ext(out.domain_size());
    for (std::size_t e = ext.find_first(); e != ElemSet::npos; e = ext.find_next(e))
      new_ext.set(image(e));
    if (new_ext.any()) out.set_concept(name, std::move(new_ext));
  }
  for (const auto& [name, ext] : interp.role_map()) {
    RoleExtension new_ext(out.domain_size());
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = ext.succ[i].find_first(); j != ElemSet::npos;
           j = ext.succ[i].find_next(j)) {
        new_ext.succ[image(i)].set(image(j));
        any = true;
      }
    }
    if (any) out.set_role(name, std::move(new_ext));
  }
  return out;
}

}  // namespace wkb
