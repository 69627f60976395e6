#include "wkb/reason.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>

namespace wkb {

namespace {

Interpretation trivial_interpretation(const WeightedKB& kb) {
  std::vector<std::string> named = kb.individuals();
  return Interpretation(named, named.empty() ? 1 : 0);
}

void check_query_individuals(const WeightedKB& kb, const Query& query) {
  std::vector<std::string> inds = kb.individuals();
  for (const auto& ind : query.individuals())
    if (std::find(inds.begin(), inds.end(), ind) == inds.end())
      throw UnknownQueryIndividualError(ind);
}

// {a} is always below Top; the axiom only forces a into the domain, so a
// model of the hard part embeds every individual of the full KB and its
// full-KB cost is defined.
WeightedKB with_individuals_of(WeightedKB base, const WeightedKB& full) {
  std::set<std::string> present;
  for (const auto& ind : base.individuals()) present.insert(ind);
  for (const auto& ind : full.individuals())
    if (!present.count(ind))
      base.add_axiom(Concept::nominal(ind), Concept::top(), Weight::infinite());
  return base;
}

// Runs `body(i)` for indices 0..count-1, stopping early once any call
// returns true; exceptions are replayed on the calling thread. Parallel
// when OpenMP is enabled: iterations share only the stop flag.
template <typename Body>
bool any_of_parallel(std::size_t count, const Body& body) {
  std::atomic<bool> stop{false};
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < count; ++i) {
    if (stop.load(std::memory_order_relaxed)) continue;
    try {
      if (body(i)) stop.store(true, std::memory_order_relaxed);
    } catch (...) {
#pragma omp critical
      {
        if (!error) error = std::current_exception();
      }
      stop.store(true, std::memory_order_relaxed);
    }
  }
  if (error) std::rethrow_exception(error);
  return stop.load();
}

}  // namespace

Verdict bcs(const WeightedKB& kb, const ExtendedCost& k, const DomainBound& bound,
            const SearchOptions& options, SearchStats* stats) {
  Verdict v;
  if (k.is_infinite()) {
    v.answer = true;
    v.complete = true;
    v.witness = trivial_interpretation(kb);
    return v;
  }
  SearchOutcome outcome = find_interpretation(kb, k, QueryConstraint::none(), bound, options, stats);
  if (outcome.found()) {
    v.answer = true;
    v.complete = true;
    v.witness = std::move(outcome.witness);
  } else {
    v.answer = false;
    v.complete = outcome.complete;
  }
  return v;
}

std::pair<ExtendedCost, bool> optimal_cost(const WeightedKB& kb, const DomainBound& bound,
                                           const SearchOptions& options, SearchStats* stats,
                                           OptStrategy strategy) {
  WeightedKB hard = with_individuals_of(k_infty(kb), kb);
  SearchOutcome model = find_interpretation(hard, ExtendedCost::zero(), QueryConstraint::none(),
                                            bound, options, stats);
  if (!model.found()) return {ExtendedCost::inf(), model.complete};

  ExtendedCost seed = cost_of(*model.witness, kb);
  if (seed.is_infinite())
    throw Error("internal: hard-part model has infinite cost");

  if (strategy == OptStrategy::LinearScan) {
    BigInt i = 0;
    while (ExtendedCost::fin(i) < seed) {
      if (bcs(kb, ExtendedCost::fin(i), bound, options, stats).answer)
        return {ExtendedCost::fin(i), bound.theoretical_complete};
      ++i;
    }
    return {seed, bound.theoretical_complete};
  }

  BigInt lo = 0, hi = seed.value();
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (bcs(kb, ExtendedCost::fin(mid), bound, options, stats).answer)
      hi = mid;
    else
      lo = mid + 1;
  }
  return {ExtendedCost::fin(lo), bound.theoretical_complete};
}

std::vector<GroundedVariant> possible_groundings(const WeightedKB& kb, const Query& query) {
  auto [base, fresh] = extend_with_query(kb, query);
  std::vector<std::string> vars = query.existential_variables();
  std::vector<std::string> targets = kb.individuals();
  targets.insert(targets.end(), fresh.begin(), fresh.end());

  std::vector<GroundedVariant> out;
  std::vector<std::size_t> choice(vars.size(), 0);
  const std::size_t kb_ind_count = kb.individuals().size();

  auto emit = [&]() {
    GroundedVariant variant;
    variant.kb = base;
    std::set<std::string> fresh_used;
    auto resolve = [&](const Term& t) -> std::string {
      if (!t.is_variable) return t.text;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == t.text) {
          const std::string& target = targets[choice[i]];
          if (choice[i] >= kb_ind_count) fresh_used.insert(target);
          return target;
        }
      throw Error("internal: unbound query variable " + t.text);
    };
    for (const auto& atom : query.atoms) {
      Assertion a = atom.is_role
                        ? Assertion::role_assertion(atom.predicate, resolve(atom.first),
                                                    resolve(atom.second))
                        : Assertion::concept_assertion(atom.predicate, resolve(atom.first));
      // the grounded atom is a hard assertion; it overrides any soft copy
      auto existing = std::find_if(variant.kb.abox.begin(), variant.kb.abox.end(),
                                   [&](const WeightedAssertion& wa) { return wa.assertion == a; });
      if (existing != variant.kb.abox.end())
        existing->weight = Weight::infinite();
      else
        variant.kb.add_assertion(a, Weight::infinite());
    }
    variant.fresh_used = fresh_used.size();
    out.push_back(std::move(variant));
  };

  if (vars.empty()) {
    emit();
    return out;
  }
  while (true) {
    emit();
    std::size_t pos = 0;
    while (pos < vars.size()) {
      if (++choice[pos] < targets.size()) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == vars.size()) break;
  }
  return out;
}

namespace {

Verdict certain_bounded(const WeightedKB& kb, const Query& query, const ExtendedCost& k,
                        const DomainBound& bound, const SearchOptions& options,
                        SearchStats* stats) {
  Verdict v;
  SearchOutcome refutation = find_interpretation(kb, k, QueryConstraint::must_avoid(query),
                                                 bound, options, stats);
  if (refutation.found()) {
    v.answer = false;
    v.complete = true;
    v.witness = std::move(refutation.witness);
  } else {
    v.answer = true;
    v.complete = refutation.complete;
  }
  return v;
}

Verdict possible_bounded(const WeightedKB& kb, const Query& query, const ExtendedCost& k,
                         const DomainBound& bound, const SearchOptions& options,
                         SearchStats* stats) {
  std::vector<GroundedVariant> variants = possible_groundings(kb, query);
  std::vector<std::optional<Interpretation>> results(variants.size());
  bool found = any_of_parallel(variants.size(), [&](std::size_t i) {
    const GroundedVariant& variant = variants[i];
    if (variant.fresh_used > bound.anon_limit) return false;  // cannot fit the domain budget
    DomainBound inner{bound.anon_limit - variant.fresh_used, bound.theoretical_complete};
    SearchOutcome outcome = find_interpretation(variant.kb, k, QueryConstraint::none(), inner,
                                                options, stats);
    if (!outcome.found()) return false;
    results[i] = std::move(outcome.witness);
    return true;
  });
  Verdict v;
  if (found) {
    v.answer = true;
    v.complete = true;
    for (auto& r : results)
      if (r) {
        v.witness = std::move(r);
        break;
      }
  } else {
    v.answer = false;
    v.complete = bound.theoretical_complete;
  }
  return v;
}

}  // namespace

Verdict entails(const WeightedKB& kb, const Query& query, const Semantics& sem,
                const DomainBound& bound, const SearchOptions& options, SearchStats* stats) {
  if (!query.is_boolean()) throw Error("entails expects a Boolean query");
  check_query_individuals(kb, query);

  switch (sem.kind) {
    case Semantics::Kind::CertainBounded:
      return certain_bounded(kb, query, sem.k, bound, options, stats);
    case Semantics::Kind::PossibleBounded:
      return possible_bounded(kb, query, sem.k, bound, options, stats);
    case Semantics::Kind::CertainOpt:
    case Semantics::Kind::PossibleOpt: {
      auto [opt, opt_complete] = optimal_cost(kb, bound, options, stats);
      if (opt.is_infinite()) {
        Verdict v;
        v.answer = false;
        v.complete = opt_complete;
        v.opt_infinite = true;
        v.opt_used = opt;
        return v;
      }
      Verdict v = sem.kind == Semantics::Kind::CertainOpt
                      ? certain_bounded(kb, query, opt, bound, options, stats)
                      : possible_bounded(kb, query, opt, bound, options, stats);
      v.complete = v.complete && opt_complete;
      v.opt_used = opt;
      return v;
    }
  }
  throw Error("unreachable");
}

Verdict bcs_via_configurations(const WeightedKB& kb, const ExtendedCost& k,
                               const DomainBound& bound, const SearchOptions& options,
                               SearchStats* stats) {
  if (k.is_infinite()) {
    Verdict v;
    v.answer = true;
    v.complete = true;
    v.witness = trivial_interpretation(kb);
    return v;
  }
  std::vector<KConfiguration> configs = all_configurations(kb, k);
  std::vector<std::optional<Interpretation>> results(configs.size());
  bool found = any_of_parallel(configs.size(), [&](std::size_t i) {
    SearchOutcome outcome = find_config_model(config_kb(kb, configs[i]),
                                              QueryConstraint::none(), bound, options, stats);
    if (!outcome.found()) return false;
    results[i] = std::move(outcome.witness);
    return true;
  });
  Verdict v;
  v.answer = found;
  v.complete = found ? true : bound.theoretical_complete;
  for (auto& r : results)
    if (r) {
      v.witness = std::move(r);
      break;
    }
  return v;
}

Verdict entails_via_configurations(const WeightedKB& kb, const Query& query,
                                   const ExtendedCost& k, const DomainBound& bound,
                                   const SearchOptions& options, SearchStats* stats) {
  if (!query.is_boolean()) throw Error("entails_via_configurations expects a Boolean query");
  check_query_individuals(kb, query);
  if (k.is_infinite())
    throw Error("configuration engine requires a finite bound");

  std::vector<KConfiguration> configs = all_configurations(kb, k);
  std::vector<std::optional<Interpretation>> results(configs.size());
  bool refuted = any_of_parallel(configs.size(), [&](std::size_t i) {
    SearchOutcome outcome = find_config_model(config_kb(kb, configs[i]),
                                              QueryConstraint::must_avoid(query), bound,
                                              options, stats);
    if (!outcome.found()) return false;
    results[i] = std::move(outcome.witness);
    return true;
  });
  Verdict v;
  if (refuted) {
    v.answer = false;
    v.complete = true;
    for (auto& r : results)
      if (r) {
        v.witness = std::move(r);
        break;
      }
  } else {
    v.answer = true;
    v.complete = bound.theoretical_complete;
  }
  return v;
}

Verdict possible_via_configurations(const WeightedKB& kb, const Query& query,
                                    const ExtendedCost& k, const DomainBound& bound,
                                    const SearchOptions& options, SearchStats* stats) {
  if (!query.is_boolean())
    throw Error("possible_via_configurations expects a Boolean query");
  check_query_individuals(kb, query);
  std::vector<GroundedVariant> variants = possible_groundings(kb, query);
  Verdict v;
  v.answer = false;
  v.complete = bound.theoretical_complete;
  for (const auto& variant : variants) {
    if (variant.fresh_used > bound.anon_limit) continue;
    DomainBound inner{bound.anon_limit - variant.fresh_used, bound.theoretical_complete};
    Verdict sub = bcs_via_configurations(variant.kb, k, inner, options, stats);
    if (sub.answer) {
      v.answer = true;
      v.complete = true;
      v.witness = std::move(sub.witness);
      return v;
    }
  }
  return v;
}

AnswersResult answers(const WeightedKB& kb, const Query& query, const Semantics& sem,
                      const DomainBound& bound, const SearchOptions& options,
                      SearchStats* stats) {
  std::vector<std::string> inds = kb.individuals();
  const std::size_t arity = query.answer_vars.size();

  // the opt value is shared by all tuples
  std::optional<ExtendedCost> opt;
  bool opt_complete = true;
  Semantics per_tuple = sem;
  if (sem.is_opt()) {
    auto [value, complete] = optimal_cost(kb, bound, options, stats);
    opt = value;
    opt_complete = complete;
    if (!value.is_infinite())
      per_tuple = sem.is_certain() ? Semantics::certain_bounded(value)
                                   : Semantics::possible_bounded(value);
  }

  std::vector<std::vector<std::string>> tuples;
  if (arity == 0) {
    tuples.push_back({});
  } else {
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      std::vector<std::string> tuple;
      for (std::size_t i = 0; i < arity; ++i) tuple.push_back(inds[idx[i]]);
      tuples.push_back(std::move(tuple));
      std::size_t pos = arity;
      while (pos > 0) {
        if (++idx[pos - 1] < inds.size()) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }

  AnswersResult out;
  for (auto& tuple : tuples) {
    Verdict v;
    if (opt && opt->is_infinite()) {
      v.answer = false;
      v.complete = opt_complete;
      v.opt_infinite = true;
      v.opt_used = *opt;
    } else {
      v = entails(kb, query.instantiate(tuple), per_tuple, bound, options, stats);
      if (opt) {
        v.complete = v.complete && opt_complete;
        v.opt_used = *opt;
      }
    }
    out.complete = out.complete && v.complete;
    if (v.answer) out.tuples.push_back({std::move(tuple), std::move(v)});
  }
  return out;
}

}  // namespace wkb
