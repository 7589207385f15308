#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contlog/syntax.hpp"

namespace contlog {

enum class AxiomScheme { A1, A2, A3, A4, A5, A6 };

std::string scheme_name(AxiomScheme s);
/// Accepts "A1".."A6"; throws Error otherwise.
AxiomScheme parse_scheme(const std::string& name);

/// Metavariable name ("phi", "psi", "rho") -> formula.
using Substitution = std::map<std::string, Formula>;

/// Metavariables used by a scheme, in the order phi, psi, rho.
std::vector<std::string> scheme_metavariables(AxiomScheme s);

/// Throws Error when a required metavariable is missing or an unknown one
/// is supplied.
Formula instantiate_axiom(AxiomScheme s, const Substitution& subst);

/// Recognises an axiom instance, trying A1..A6 in order.
std::optional<std::pair<AxiomScheme, Substitution>> match_axiom(const Formula& f);

struct Justification {
  enum class Kind { Premise, Axiom, MP };
  Kind kind = Kind::Premise;
  std::size_t premise = 0;
  AxiomScheme scheme = AxiomScheme::A1;
  Substitution subst;
  // MP(i, j): line i is phi, line j is psi - phi, the conclusion is psi.
  std::size_t i = 0;
  std::size_t j = 0;

  static Justification by_premise(std::size_t k);
  static Justification by_axiom(AxiomScheme s, Substitution subst);
  static Justification by_mp(std::size_t i, std::size_t j);
};

struct ProofLine {
  Formula formula;
  Justification by;
};

using Proof = std::vector<ProofLine>;

struct ProofCheck {
  bool ok = true;
  std::optional<std::size_t> bad_line;  // 0-based
  std::string reason;
};

ProofCheck check_proof(const Proof& proof, const std::vector<Formula>& premises);

struct HalfElimResult {
  std::vector<Formula> sigma;
  Formula goal;
  /// Fresh atom -> the half-subformula it replaced, written over the atoms
  /// available when it was introduced.
  std::vector<std::pair<std::string, Formula>> fresh;
};

/// Replaces half-subformulas innermost first by fresh atoms Q0, Q1, ...
/// (skipping names already in use), adding psi - 2Q and Q - (psi - Q) for
/// each replaced half psi.
HalfElimResult eliminate_half(const std::vector<Formula>& sigma, const Formula& goal);

/// The recorded derivation of P - P with P a fresh atom.
const Proof& library_self_monus();

/// Bounded forward-chaining search; `depth` bounds the number of lines.
/// A nullopt result is not a refutation.
std::optional<Proof> find_proof(const Formula& goal, const std::vector<Formula>& premises, std::size_t depth);

}  // namespace contlog
