#include "wkb/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace wkb {

bool is_valid_identifier(const std::string& text) {
  if (text.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  for (char c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Concept

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Concept Concept::make(ConceptKind kind, std::string text, std::vector<Concept> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->text = std::move(text);
  node->children = std::move(children);
  std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL + 1;
  h = hash_combine(h, std::hash<std::string>{}(node->text));
  for (const auto& c : node->children) h = hash_combine(h, c.hash());
  node->hash = h;
  return Concept(std::move(node));
}

Concept Concept::name(std::string concept_name) {
  return make(ConceptKind::Name, std::move(concept_name), {});
}
Concept Concept::nominal(std::string individual) {
  return make(ConceptKind::Nominal, std::move(individual), {});
}
Concept Concept::top() { return make(ConceptKind::Top, {}, {}); }
Concept Concept::bot() { return make(ConceptKind::Bot, {}, {}); }
Concept Concept::conj(Concept lhs, Concept rhs) {
  return make(ConceptKind::And, {}, {std::move(lhs), std::move(rhs)});
}
Concept Concept::disj(Concept lhs, Concept rhs) {
  return make(ConceptKind::Or, {}, {std::move(lhs), std::move(rhs)});
}
Concept Concept::negation(Concept arg) {
  return make(ConceptKind::Not, {}, {std::move(arg)});
}
Concept Concept::exists(std::string role, Concept arg) {
  return make(ConceptKind::Exists, std::move(role), {std::move(arg)});
}
Concept Concept::forall(std::string role, Concept arg) {
  return make(ConceptKind::Forall, std::move(role), {std::move(arg)});
}

bool Concept::operator==(const Concept& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return compare(other) == 0;
}

int Concept::compare(const Concept& other) const {
  if (node_ == other.node_) return 0;
  if (node_->kind != other.node_->kind)
    return node_->kind < other.node_->kind ? -1 : 1;
  if (int c = node_->text.compare(other.node_->text); c != 0) return c < 0 ? -1 : 1;
  if (node_->children.size() != other.node_->children.size())
    return node_->children.size() < other.node_->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (int c = node_->children[i].compare(other.node_->children[i]); c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Cost arithmetic

ExtendedCost cost_add(const ExtendedCost& a, const ExtendedCost& b) {
  ExtendedCost r = a;
  r += b;
  return r;
}

ExtendedCost cost_scale(const Weight& w, std::uint64_t n) {
  if (n == 0) return ExtendedCost::zero();
  if (w.is_infinite()) return ExtendedCost::inf();
  return ExtendedCost::fin(BigInt(w.value()) * n);
}

// ---------------------------------------------------------------------------
// WeightedKB views

namespace {

void collect_individuals(const Concept& c, std::vector<std::string>& out,
                         std::set<std::string>& seen) {
  c.for_each_subconcept([&](const Concept& sub) {
    if (sub.kind() == ConceptKind::Nominal && seen.insert(sub.text()).second)
      out.push_back(sub.text());
  });
}

template <typename Fn>
void for_each_symbol(const WeightedKB& kb, Fn&& fn) {
  auto walk = [&](const Concept& c) {
    c.for_each_subconcept([&](const Concept& sub) {
      switch (sub.kind()) {
        case ConceptKind::Name:
          fn(SymbolKind::ConceptName, sub.text());
          break;
        case ConceptKind::Nominal:
          fn(SymbolKind::IndividualName, sub.text());
          break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
          fn(SymbolKind::RoleName, sub.role());
          break;
        default:
          break;
      }
    });
  };
  for (const auto& ax : kb.tbox) {
    walk(ax.inclusion.lhs);
    walk(ax.inclusion.rhs);
  }
  for (const auto& wa : kb.abox) {
    const Assertion& a = wa.assertion;
    fn(a.kind == AssertionKind::Concept ? SymbolKind::ConceptName : SymbolKind::RoleName,
       a.predicate);
    fn(SymbolKind::IndividualName, a.subject);
    if (a.kind == AssertionKind::Role) fn(SymbolKind::IndividualName, a.object);
  }
}

}  // namespace

std::vector<std::string> WeightedKB::individuals() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& ax : tbox) {
    collect_individuals(ax.inclusion.lhs, out, seen);
    collect_individuals(ax.inclusion.rhs, out, seen);
  }
  for (const auto& wa : abox) {
    if (seen.insert(wa.assertion.subject).second) out.push_back(wa.assertion.subject);
    if (wa.assertion.kind == AssertionKind::Role && seen.insert(wa.assertion.object).second)
      out.push_back(wa.assertion.object);
  }
  return out;
}

std::vector<std::string> WeightedKB::concept_names() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for_each_symbol(*this, [&](SymbolKind k, const std::string& name) {
    if (k == SymbolKind::ConceptName && seen.insert(name).second) out.push_back(name);
  });
  return out;
}

std::vector<std::string> WeightedKB::role_names() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for_each_symbol(*this, [&](SymbolKind k, const std::string& name) {
    if (k == SymbolKind::RoleName && seen.insert(name).second) out.push_back(name);
  });
  return out;
}

// ---------------------------------------------------------------------------
// validate

std::vector<Diagnostic> validate(const WeightedKB& kb) {
  std::vector<Diagnostic> out;

  // Weight positivity per item.
  for (std::size_t i = 0; i < kb.tbox.size(); ++i) {
    if (!kb.tbox[i].weight.is_infinite() && kb.tbox[i].weight.value() == 0)
      out.push_back({"tbox[" + std::to_string(i) + "]", "weight must be positive"});
  }
  for (std::size_t i = 0; i < kb.abox.size(); ++i) {
    if (!kb.abox[i].weight.is_infinite() && kb.abox[i].weight.value() == 0)
      out.push_back({"abox[" + std::to_string(i) + "]", "weight must be positive"});
  }

  // Namespace disjointness and identifier shape.
  std::map<std::string, std::set<SymbolKind>> uses;
  for_each_symbol(kb, [&](SymbolKind k, const std::string& name) { uses[name].insert(k); });
  for (const auto& [name, kinds] : uses) {
    if (!is_valid_identifier(name))
      out.push_back({"symbol '" + name + "'", "identifier must match [A-Za-z][A-Za-z0-9_]*"});
    if (kinds.size() > 1)
      out.push_back({"symbol '" + name + "'",
                     "name used in more than one namespace (concept/role/individual)"});
  }

  // Duplicates by structural identity.
  for (std::size_t i = 0; i < kb.tbox.size(); ++i)
    for (std::size_t j = i + 1; j < kb.tbox.size(); ++j)
      if (kb.tbox[i].inclusion == kb.tbox[j].inclusion)
        out.push_back({"tbox[" + std::to_string(j) + "]",
                       "duplicate of tbox[" + std::to_string(i) + "]"});
  for (std::size_t i = 0; i < kb.abox.size(); ++i)
    for (std::size_t j = i + 1; j < kb.abox.size(); ++j)
      if (kb.abox[i].assertion == kb.abox[j].assertion)
        out.push_back({"abox[" + std::to_string(j) + "]",
                       "duplicate of abox[" + std::to_string(i) + "]"});

  return out;
}

// ---------------------------------------------------------------------------
// fragment_of / subconcepts / violation_concept / k_infty

Fragment fragment_of(const std::vector<WeightedAxiom>& tbox) {
  bool alco = false;
  auto check = [&](const Concept& c) {
    c.for_each_subconcept([&](const Concept& sub) {
      switch (sub.kind()) {
        case ConceptKind::Forall:
        case ConceptKind::Not:
        case ConceptKind::Or:
        case ConceptKind::Nominal:
          alco = true;
          break;
        default:
          break;
      }
    });
  };
  for (const auto& ax : tbox) {
    check(ax.inclusion.lhs);
    check(ax.inclusion.rhs);
  }
  return alco ? Fragment::ALCO : Fragment::ELBot;
}

std::vector<Concept> subconcepts(const std::vector<WeightedAxiom>& tbox) {
  std::vector<Concept> out;
  std::unordered_set<Concept, ConceptHash> seen;
  auto add = [&](const Concept& c) {
    c.for_each_subconcept([&](const Concept& sub) {
      if (seen.insert(sub).second) out.push_back(sub);
    });
  };
  for (const auto& ax : tbox) {
    add(ax.inclusion.lhs);
    add(ax.inclusion.rhs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Concept violation_concept(const ConceptInclusion& inclusion) {
  return Concept::conj(inclusion.lhs, Concept::negation(inclusion.rhs));
}

WeightedKB k_infty(const WeightedKB& kb) {
  WeightedKB out;
  for (const auto& ax : kb.tbox)
    if (ax.weight.is_infinite()) out.tbox.push_back(ax);
  for (const auto& wa : kb.abox)
    if (wa.weight.is_infinite()) out.abox.push_back(wa);
  return out;
}

// ---------------------------------------------------------------------------
// Query

std::vector<std::string> Query::variables() const {
  std::vector<std::string> out = answer_vars;
  std::set<std::string> seen(answer_vars.begin(), answer_vars.end());
  auto add = [&](const Term& t) {
    if (t.is_variable && seen.insert(t.text).second) out.push_back(t.text);
  };
  for (const auto& atom : atoms) {
    add(atom.first);
    if (atom.is_role) add(atom.second);
  }
  return out;
}

std::vector<std::string> Query::existential_variables() const {
  std::vector<std::string> all = variables();
  return {all.begin() + static_cast<std::ptrdiff_t>(answer_vars.size()), all.end()};
}

std::vector<std::string> Query::individuals() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const Term& t) {
    if (!t.is_variable && seen.insert(t.text).second) out.push_back(t.text);
  };
  for (const auto& atom : atoms) {
    add(atom.first);
    if (atom.is_role) add(atom.second);
  }
  return out;
}

Query Query::instantiate(const std::vector<std::string>& tuple) const {
  if (tuple.size() != answer_vars.size())
    throw Error("instantiate: tuple arity mismatch");
  Query out;
  out.atoms = atoms;
  auto subst = [&](Term& t) {
    if (!t.is_variable) return;
    for (std::size_t i = 0; i < answer_vars.size(); ++i) {
      if (t.text == answer_vars[i]) {
        t = Term::individual(tuple[i]);
        return;
      }
    }
  };
  for (auto& atom : out.atoms) {
    subst(atom.first);
    if (atom.is_role) subst(atom.second);
  }
  return out;
}

}  // namespace wkb
