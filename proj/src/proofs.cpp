#include "contlog/proofs.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace contlog {

namespace {

// Every atom of a scheme pattern is a metavariable. Substitution replaces
// atoms simultaneously, so object atoms named phi/psi/rho are harmless.
Formula meta(const std::string& name) { return Formula::atom(name); }

Formula scheme_pattern(AxiomScheme s) {
  using F = Formula;
  Formula phi = meta("phi"), psi = meta("psi"), rho = meta("rho");
  switch (s) {
    case AxiomScheme::A1:
      return F::monus(F::monus(phi, psi), phi);
    case AxiomScheme::A2:
      return F::monus(F::monus(F::monus(rho, phi), F::monus(rho, psi)), F::monus(psi, phi));
    case AxiomScheme::A3:
      return F::monus(conj(phi, psi), conj(psi, phi));
    case AxiomScheme::A4:
      return F::monus(F::monus(phi, psi), F::monus(F::neg(psi), F::neg(phi)));
    case AxiomScheme::A5:
      return F::monus(F::half(phi), F::monus(phi, F::half(phi)));
    case AxiomScheme::A6:
      return F::monus(F::monus(phi, F::half(phi)), F::half(phi));
  }
  return F::zero();
}

bool match(const Formula& pattern, const Formula& f, Substitution& binding) {
  if (pattern.kind() == Formula::Kind::Atom) {
    auto [it, inserted] = binding.emplace(pattern.name(), f);
    return inserted || it->second == f;
  }
  if (pattern.kind() != f.kind()) return false;
  switch (f.kind()) {
    case Formula::Kind::Zero:
      return true;
    case Formula::Kind::Atom:
      return false;
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      return match(pattern.arg(), f.arg(), binding);
    case Formula::Kind::Monus:
      return match(pattern.lhs(), f.lhs(), binding) && match(pattern.rhs(), f.rhs(), binding);
  }
  return false;
}

}  // namespace

std::string scheme_name(AxiomScheme s) { return "A" + std::to_string(static_cast<int>(s) + 1); }

AxiomScheme parse_scheme(const std::string& name) {
  for (int k = 0; k < 6; ++k)
    if (name == "A" + std::to_string(k + 1)) return static_cast<AxiomScheme>(k);
  throw Error("unknown axiom scheme '" + name + "'");
}

std::vector<std::string> scheme_metavariables(AxiomScheme s) {
  switch (s) {
    case AxiomScheme::A2:
      return {"phi", "psi", "rho"};
    case AxiomScheme::A5:
    case AxiomScheme::A6:
      return {"phi"};
    default:
      return {"phi", "psi"};
  }
}

Formula instantiate_axiom(AxiomScheme s, const Substitution& subst) {
  auto needed = scheme_metavariables(s);
  for (const auto& [key, value] : subst)
    if (std::find(needed.begin(), needed.end(), key) == needed.end())
      throw Error("scheme " + scheme_name(s) + " has no metavariable '" + key + "'");
  std::map<std::string, Formula> renamed;
  for (const auto& key : needed) {
    auto it = subst.find(key);
    if (it == subst.end()) throw Error("missing metavariable '" + key + "' for " + scheme_name(s));
    renamed.emplace(key, it->second);
  }
  return substitute(scheme_pattern(s), renamed);
}

std::optional<std::pair<AxiomScheme, Substitution>> match_axiom(const Formula& f) {
  for (int k = 0; k < 6; ++k) {
    auto s = static_cast<AxiomScheme>(k);
    Substitution binding;
    if (match(scheme_pattern(s), f, binding)) return std::make_pair(s, std::move(binding));
  }
  return std::nullopt;
}

Justification Justification::by_premise(std::size_t k) {
  Justification j;
  j.kind = Kind::Premise;
  j.premise = k;
  return j;
}

Justification Justification::by_axiom(AxiomScheme s, Substitution subst) {
  Justification j;
  j.kind = Kind::Axiom;
  j.scheme = s;
  j.subst = std::move(subst);
  return j;
}

Justification Justification::by_mp(std::size_t i, std::size_t j) {
  Justification out;
  out.kind = Kind::MP;
  out.i = i;
  out.j = j;
  return out;
}

ProofCheck check_proof(const Proof& proof, const std::vector<Formula>& premises) {
  auto fail = [](std::size_t line, std::string reason) { return ProofCheck{false, line, std::move(reason)}; };
  for (std::size_t n = 0; n < proof.size(); ++n) {
    const ProofLine& line = proof[n];
    const Justification& by = line.by;
    switch (by.kind) {
      case Justification::Kind::Premise:
        if (by.premise >= premises.size()) return fail(n, "premise index out of range");
        if (premises[by.premise] != line.formula) return fail(n, "formula differs from premise");
        break;
      case Justification::Kind::Axiom: {
        Formula expected;
        try {
          expected = instantiate_axiom(by.scheme, by.subst);
        } catch (const Error& e) {
          return fail(n, e.what());
        }
        if (expected != line.formula) return fail(n, "not the stated instance of " + scheme_name(by.scheme));
        break;
      }
      case Justification::Kind::MP:
        if (by.i >= n || by.j >= n) return fail(n, "modus ponens refers to a later line");
        if (proof[by.j].formula != Formula::monus(line.formula, proof[by.i].formula))
          return fail(n, "modus ponens shape mismatch");
        break;
    }
  }
  return {};
}

HalfElimResult eliminate_half(const std::vector<Formula>& sigma, const Formula& goal) {
  HalfElimResult out{sigma, goal, {}};
  std::set<std::string> used;
  for (const auto& f : sigma) {
    auto a = atoms(f);
    used.insert(a.begin(), a.end());
  }
  {
    auto a = atoms(goal);
    used.insert(a.begin(), a.end());
  }
  std::size_t counter = 0;
  std::vector<Formula> companions;

  // Leftmost half node with a half-free argument.
  std::function<std::optional<Formula>(const Formula&)> innermost = [&](const Formula& f) -> std::optional<Formula> {
    switch (f.kind()) {
      case Formula::Kind::Zero:
      case Formula::Kind::Atom:
        return std::nullopt;
      case Formula::Kind::Neg:
        return innermost(f.arg());
      case Formula::Kind::Half:
        if (auto inner = innermost(f.arg())) return inner;
        return f;
      case Formula::Kind::Monus:
        if (auto l = innermost(f.lhs())) return l;
        return innermost(f.rhs());
    }
    return std::nullopt;
  };

  for (;;) {
    std::optional<Formula> target;
    for (const auto& f : out.sigma)
      if ((target = innermost(f))) break;
    if (!target) target = innermost(out.goal);
    if (!target) break;

    std::string name;
    do name = "Q" + std::to_string(counter++);
    while (used.count(name));
    used.insert(name);
    Formula q = Formula::atom(name);

    for (auto& f : out.sigma) f = replace_all(f, *target, q);
    for (auto& f : companions) f = replace_all(f, *target, q);
    out.goal = replace_all(out.goal, *target, q);
    Formula psi = target->arg();
    companions.push_back(monus_chain(psi, 2, q));
    companions.push_back(Formula::monus(q, Formula::monus(psi, q)));
    out.fresh.emplace_back(name, *target);
  }
  out.sigma.insert(out.sigma.end(), companions.begin(), companions.end());
  return out;
}

namespace {

// A derivation step for a formula found during search.
struct Recipe {
  Justification::Kind kind = Justification::Kind::Premise;
  std::size_t premise = 0;
  AxiomScheme scheme = AxiomScheme::A1;
  Substitution subst;
  Formula minor;  // phi in MP
  Formula major;  // psi - phi in MP

  static Recipe premise_at(std::size_t k) {
    Recipe r;
    r.premise = k;
    return r;
  }
  static Recipe axiom(AxiomScheme s, Substitution sub) {
    Recipe r;
    r.kind = Justification::Kind::Axiom;
    r.scheme = s;
    r.subst = std::move(sub);
    return r;
  }
  static Recipe mp(Formula minor, Formula major) {
    Recipe r;
    r.kind = Justification::Kind::MP;
    r.minor = std::move(minor);
    r.major = std::move(major);
    return r;
  }
};

void subformulas(const Formula& f, std::vector<Formula>& out, std::unordered_set<Formula, FormulaHash>& seen) {
  if (!seen.insert(f).second) return;
  switch (f.kind()) {
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      subformulas(f.arg(), out, seen);
      break;
    case Formula::Kind::Monus:
      subformulas(f.lhs(), out, seen);
      subformulas(f.rhs(), out, seen);
      break;
    default:
      break;
  }
  out.push_back(f);
}

constexpr std::size_t kMaxSeedTerms = 14;
constexpr std::size_t kMaxKnown = 200000;
constexpr int kMaxRounds = 12;

}  // namespace

std::optional<Proof> find_proof(const Formula& goal, const std::vector<Formula>& premises, std::size_t depth) {
  if (depth == 0) return std::nullopt;
  std::unordered_map<Formula, Recipe, FormulaHash> known;
  std::vector<Formula> order;  // insertion order, for determinism
  auto add = [&](const Formula& f, Recipe r) {
    if (known.size() >= kMaxKnown) return;
    if (known.emplace(f, std::move(r)).second) order.push_back(f);
  };

  for (std::size_t k = 0; k < premises.size(); ++k) add(premises[k], Recipe::premise_at(k));
  if (auto m = match_axiom(goal)) add(goal, Recipe::axiom(m->first, m->second));

  std::vector<Formula> terms;
  {
    std::unordered_set<Formula, FormulaHash> seen;
    subformulas(goal, terms, seen);
    for (const auto& p : premises) subformulas(p, terms, seen);
    std::stable_sort(terms.begin(), terms.end(), [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
  }

  // Recorded derivations, instantiated at every subformula.
  const Proof& lib = library_self_monus();
  for (const auto& t : terms) {
    std::map<std::string, Formula> s{{"P", t}};
    for (const auto& line : lib) {
      Formula f = substitute(line.formula, s);
      if (line.by.kind == Justification::Kind::Axiom) {
        Substitution sub;
        for (const auto& [key, value] : line.by.subst) sub.emplace(key, substitute(value, s));
        add(f, Recipe::axiom(line.by.scheme, std::move(sub)));
      } else {
        add(f, Recipe::mp(substitute(lib[line.by.i].formula, s), substitute(lib[line.by.j].formula, s)));
      }
    }
  }

  // Axiom instances over the smallest subformulas.
  std::vector<Formula> seeds(terms.begin(), terms.begin() + std::min(terms.size(), kMaxSeedTerms));
  for (int k = 0; k < 6; ++k) {
    auto s = static_cast<AxiomScheme>(k);
    auto vars = scheme_metavariables(s);
    std::vector<std::size_t> idx(vars.size(), 0);
    while (!seeds.empty()) {
      Substitution sub;
      for (std::size_t v = 0; v < vars.size(); ++v) sub.emplace(vars[v], seeds[idx[v]]);
      add(instantiate_axiom(s, sub), Recipe::axiom(s, sub));
      std::size_t v = 0;
      while (v < idx.size() && ++idx[v] == seeds.size()) idx[v++] = 0;
      if (v == idx.size()) break;
    }
  }

  // Modus ponens saturation.
  for (int round = 0; round < kMaxRounds && !known.count(goal); ++round) {
    std::vector<std::pair<Formula, Recipe>> fresh;
    for (const auto& f : order) {
      if (f.kind() != Formula::Kind::Monus) continue;
      Formula psi = f.lhs(), phi = f.rhs();
      if (known.count(psi) || !known.count(phi)) continue;
      fresh.emplace_back(psi, Recipe::mp(phi, f));
    }
    if (fresh.empty()) break;
    for (auto& [f, r] : fresh) add(f, std::move(r));
  }
  if (!known.count(goal)) return std::nullopt;

  Proof proof;
  std::unordered_map<Formula, std::size_t, FormulaHash> line_of;
  std::function<std::size_t(const Formula&)> emit = [&](const Formula& f) -> std::size_t {
    if (auto it = line_of.find(f); it != line_of.end()) return it->second;
    const Recipe& r = known.at(f);
    Justification by;
    switch (r.kind) {
      case Justification::Kind::Premise:
        by = Justification::by_premise(r.premise);
        break;
      case Justification::Kind::Axiom:
        by = Justification::by_axiom(r.scheme, r.subst);
        break;
      case Justification::Kind::MP: {
        std::size_t i = emit(r.minor);
        std::size_t j = emit(r.major);
        by = Justification::by_mp(i, j);
        break;
      }
    }
    proof.push_back({f, std::move(by)});
    line_of.emplace(f, proof.size() - 1);
    return proof.size() - 1;
  };
  emit(goal);
  if (proof.size() > depth) return std::nullopt;
  return proof;
}

}  // namespace contlog
