#include "wkb/interp.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace wkb {

std::vector<std::pair<std::size_t, std::size_t>> RoleExtension::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < succ.size(); ++i)
    for (std::size_t j = succ[i].find_first(); j != ElemSet::npos; j = succ[i].find_next(j))
      out.emplace_back(i, j);
  return out;
}

Interpretation::Interpretation(std::vector<std::string> named, std::size_t anon_count)
    : named_(std::move(named)), anon_count_(anon_count), empty_role_(0) {
  if (domain_size() == 0) throw Error("interpretation domain must be non-empty");
  std::set<std::string> seen;
  for (const auto& n : named_)
    if (!seen.insert(n).second) throw Error("named individuals must be pairwise distinct: " + n);
  empty_set_ = ElemSet(domain_size());
  empty_role_ = RoleExtension(domain_size());
}

std::optional<std::size_t> Interpretation::element_of(const std::string& individual) const {
  for (std::size_t i = 0; i < named_.size(); ++i)
    if (named_[i] == individual) return i;
  return std::nullopt;
}

Interpretation& Interpretation::set_concept(const std::string& name, ElemSet extension) {
  if (extension.size() != domain_size()) throw Error("extension size mismatch for " + name);
  concepts_[name] = std::move(extension);
  return *this;
}

Interpretation& Interpretation::add_to_concept(const std::string& name, std::size_t element) {
  if (element >= domain_size()) throw Error("element id out of range");
  auto it = concepts_.find(name);
  if (it == concepts_.end()) it = concepts_.emplace(name, ElemSet(domain_size())).first;
  it->second.set(element);
  return *this;
}

Interpretation& Interpretation::set_role(const std::string& name, RoleExtension extension) {
  if (extension.succ.size() != domain_size()) throw Error("extension size mismatch for " + name);
  roles_[name] = std::move(extension);
  return *this;
}

Interpretation& Interpretation::add_to_role(const std::string& name, std::size_t from,
                                            std::size_t to) {
  if (from >= domain_size() || to >= domain_size()) throw Error("element id out of range");
  auto it = roles_.find(name);
  if (it == roles_.end()) it = roles_.emplace(name, RoleExtension(domain_size())).first;
  it->second.succ[from].set(to);
  return *this;
}

const ElemSet& Interpretation::concept_raw(const std::string& name) const {
  auto it = concepts_.find(name);
  return it == concepts_.end() ? empty_set_ : it->second;
}

const RoleExtension& Interpretation::role_raw(const std::string& name) const {
  auto it = roles_.find(name);
  return it == roles_.end() ? empty_role_ : it->second;
}

bool Interpretation::operator==(const Interpretation& other) const {
  if (named_ != other.named_ || anon_count_ != other.anon_count_) return false;
  auto nonempty_concepts = [](const Interpretation& i) {
    std::map<std::string, ElemSet> out;
    for (const auto& [k, v] : i.concepts_)
      if (v.any()) out.emplace(k, v);
    return out;
  };
  auto nonempty_roles = [](const Interpretation& i) {
    std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> out;
    for (const auto& [k, v] : i.roles_) {
      auto p = v.pairs();
      if (!p.empty()) out.emplace(k, std::move(p));
    }
    return out;
  };
  return nonempty_concepts(*this) == nonempty_concepts(other) &&
         nonempty_roles(*this) == nonempty_roles(other);
}

// ---------------------------------------------------------------------------
// Extension evaluation

namespace {

ElemSet eval(const Interpretation& interp, const Concept& c,
             std::unordered_map<const void*, ElemSet>& memo) {
  auto it = memo.find(c.id());
  if (it != memo.end()) return it->second;
  const std::size_t n = interp.domain_size();
  ElemSet out(n);
  switch (c.kind()) {
    case ConceptKind::Name:
      out = interp.concept_raw(c.text());
      break;
    case ConceptKind::Nominal: {
      auto id = interp.element_of(c.text());
      if (!id) throw UnknownNominalIndividualError(c.text());
      out.set(*id);
      break;
    }
    case ConceptKind::Top:
      out.set();
      break;
    case ConceptKind::Bot:
      break;
    case ConceptKind::And:
      out = eval(interp, c.left(), memo) & eval(interp, c.right(), memo);
      break;
    case ConceptKind::Or:
      out = eval(interp, c.left(), memo) | eval(interp, c.right(), memo);
      break;
    case ConceptKind::Not:
      out = ~eval(interp, c.child(), memo);
      break;
    case ConceptKind::Exists: {
      ElemSet arg = eval(interp, c.child(), memo);
      const RoleExtension& role = interp.role_raw(c.role());
      for (std::size_t i = 0; i < n; ++i)
        if ((role.succ[i] & arg).any()) out.set(i);
      break;
    }
    case ConceptKind::Forall: {
      // only R.C == not (some R.(not C)); one code path for the vacuous case
      ElemSet neg_arg = ~eval(interp, c.child(), memo);
      const RoleExtension& role = interp.role_raw(c.role());
      out.set();
      for (std::size_t i = 0; i < n; ++i)
        if ((role.succ[i] & neg_arg).any()) out.reset(i);
      break;
    }
  }
  memo.emplace(c.id(), out);
  return out;
}

}  // namespace

ElemSet concept_extension(const Interpretation& interp, const Concept& c) {
  std::unordered_map<const void*, ElemSet> memo;
  return eval(interp, c, memo);
}

std::vector<ElemSet> concept_extensions(const Interpretation& interp,
                                        const std::vector<Concept>& concepts) {
  std::unordered_map<const void*, ElemSet> memo;
  std::vector<ElemSet> out;
  out.reserve(concepts.size());
  for (const auto& c : concepts) out.push_back(eval(interp, c, memo));
  return out;
}

bool satisfies_assertion(const Interpretation& interp, const Assertion& assertion) {
  auto subj = interp.element_of(assertion.subject);
  if (!subj) throw UnknownIndividualError(assertion.subject);
  if (assertion.kind == AssertionKind::Concept)
    return interp.concept_raw(assertion.predicate).test(*subj);
  auto obj = interp.element_of(assertion.object);
  if (!obj) throw UnknownIndividualError(assertion.object);
  return interp.role_raw(assertion.predicate).has(*subj, *obj);
}

bool satisfies_inclusion(const Interpretation& interp, const ConceptInclusion& inclusion) {
  return violations_of_inclusion(interp, inclusion).none();
}

ElemSet violations_of_inclusion(const Interpretation& interp, const ConceptInclusion& inclusion) {
  return concept_extension(interp, violation_concept(inclusion));
}

std::vector<Assertion> violations_of_abox(const Interpretation& interp,
                                          const std::vector<WeightedAssertion>& abox) {
  std::vector<Assertion> out;
  for (const auto& wa : abox)
    if (!satisfies_assertion(interp, wa.assertion)) out.push_back(wa.assertion);
  return out;
}

ExtendedCost cost_of(const Interpretation& interp, const WeightedKB& kb) {
  ExtendedCost total = ExtendedCost::zero();
  for (const auto& ax : kb.tbox) {
    std::uint64_t count = violations_of_inclusion(interp, ax.inclusion).count();
    total += cost_scale(ax.weight, count);
  }
  for (const auto& wa : kb.abox) {
    if (!satisfies_assertion(interp, wa.assertion))
      total += ExtendedCost::of_weight(wa.weight);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Query matching

namespace {

struct MatchState {
  const Interpretation& interp;
  std::vector<QueryAtom> atoms;
  std::vector<bool> done;
  Match binding;
};

std::optional<std::size_t> bound_element(const MatchState& st, const Term& t) {
  auto it = st.binding.find(t);
  if (it != st.binding.end()) return it->second;
  return std::nullopt;
}

// Number of instantiations of an atom consistent with the current binding;
// used to pick the most constrained atom next.
std::size_t candidate_count(const MatchState& st, const QueryAtom& atom) {
  const std::size_t n = st.interp.domain_size();
  auto a = bound_element(st, atom.first);
  if (!atom.is_role) {
    const ElemSet& ext = st.interp.concept_raw(atom.predicate);
    return a ? (ext.test(*a) ? 1 : 0) : ext.count();
  }
  auto b = bound_element(st, atom.second);
  const RoleExtension& role = st.interp.role_raw(atom.predicate);
  if (a && b) return role.has(*a, *b) ? 1 : 0;
  if (a) return role.succ[*a].count();
  if (b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (role.succ[i].test(*b)) ++c;
    return c;
  }
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += role.succ[i].count();
  return c;
}

bool search(MatchState& st) {
  // pick the undone atom with the fewest candidates, ties by query order
  std::size_t best = st.atoms.size();
  std::size_t best_count = 0;
  for (std::size_t i = 0; i < st.atoms.size(); ++i) {
    if (st.done[i]) continue;
    std::size_t c = candidate_count(st, st.atoms[i]);
    if (best == st.atoms.size() || c < best_count) {
      best = i;
      best_count = c;
    }
  }
  if (best == st.atoms.size()) return true;

  const QueryAtom& atom = st.atoms[best];
  st.done[best] = true;
  auto undo = [&](std::vector<Term>& bound) {
    for (const auto& t : bound) st.binding.erase(t);
    st.done[best] = false;
  };

  auto try_bind = [&](const Term& t, std::size_t e, std::vector<Term>& newly) {
    auto cur = bound_element(st, t);
    if (cur) return *cur == e;
    st.binding.emplace(t, e);
    newly.push_back(t);
    return true;
  };

  const std::size_t n = st.interp.domain_size();
  if (!atom.is_role) {
    const ElemSet& ext = st.interp.concept_raw(atom.predicate);
    for (std::size_t e = 0; e < n; ++e) {
      if (!ext.test(e)) continue;
      std::vector<Term> newly;
      if (try_bind(atom.first, e, newly) && search(st)) return true;
      undo(newly);
      st.done[best] = true;
    }
  } else {
    const RoleExtension& role = st.interp.role_raw(atom.predicate);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = role.succ[i].find_first(); j != ElemSet::npos;
           j = role.succ[i].find_next(j)) {
        std::vector<Term> newly;
        if (try_bind(atom.first, i, newly) && try_bind(atom.second, j, newly) && search(st))
          return true;
        undo(newly);
        st.done[best] = true;
      }
    }
  }
  st.done[best] = false;
  return false;
}

}  // namespace

std::optional<Match> find_match(const Interpretation& interp, const Query& query,
                                const Match& binding) {
  MatchState st{interp, query.atoms, std::vector<bool>(query.atoms.size(), false), binding};
  // individual terms denote themselves
  for (const auto& atom : query.atoms) {
    for (const Term* t : {&atom.first, atom.is_role ? &atom.second : nullptr}) {
      if (!t || t->is_variable) continue;
      auto id = interp.element_of(t->text);
      if (!id) throw UnknownIndividualError(t->text);
      auto [it, inserted] = st.binding.emplace(*t, *id);
      (void)it;
      (void)inserted;
    }
  }
  if (search(st)) return st.binding;
  return std::nullopt;
}

bool satisfies_bcq(const Interpretation& interp, const Query& query) {
  return find_match(interp, query).has_value();
}

// ---------------------------------------------------------------------------
// JSON witness format

std::string interpretation_to_json(const Interpretation& interp) {
  nlohmann::json j;
  j["domain"] = interp.domain_size();
  j["named"] = interp.named();
  nlohmann::json concepts = nlohmann::json::object();
  for (const auto& [name, ext] : interp.concept_map()) {
    std::vector<std::size_t> ids;
    for (std::size_t i = ext.find_first(); i != ElemSet::npos; i = ext.find_next(i))
      ids.push_back(i);
    concepts[name] = ids;
  }
  j["concepts"] = concepts;
  nlohmann::json roles = nlohmann::json::object();
  for (const auto& [name, ext] : interp.role_map()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [a, b] : ext.pairs()) arr.push_back({a, b});
    roles[name] = arr;
  }
  j["roles"] = roles;
  return j.dump();
}

Interpretation interpretation_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::string> named = j.at("named").get<std::vector<std::string>>();
  std::size_t domain = j.at("domain").get<std::size_t>();
  if (domain < named.size()) throw Error("witness domain smaller than named individual count");
  Interpretation interp(named, domain - named.size());
  for (const auto& [name, ids] : j.at("concepts").items())
    for (const auto& id : ids) interp.add_to_concept(name, id.get<std::size_t>());
  for (const auto& [name, pairs] : j.at("roles").items())
    for (const auto& p : pairs)
      interp.add_to_role(name, p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  return interp;
}

}  // namespace wkb
