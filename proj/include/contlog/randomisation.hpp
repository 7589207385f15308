#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contlog/rv.hpp"
#include "contlog/syntax.hpp"

namespace contlog {

/// A finite metric structure. Predicate tables are flat, indexed by the
/// argument tuple in row-major order (first argument most significant);
/// function tables map argument tuples to element indices.
struct FiniteLStructure {
  std::vector<std::string> universe;
  std::map<std::string, std::vector<Rational>> predicates;  // excluding d
  std::map<std::string, std::vector<std::size_t>> functions;
  std::vector<std::vector<Rational>> metric;

  std::size_t size() const { return universe.size(); }
  /// Throws Error for unknown element ids.
  std::size_t index_of(const std::string& id) const;
  Rational predicate_value(const std::string& name, const std::vector<std::size_t>& args) const;
  std::size_t function_value(const std::string& name, const std::vector<std::size_t>& args) const;
};

/// Throws Error unless the tables have the right shapes, d is a metric with
/// positive off-diagonal values, and every symbol respects its Lipschitz
/// constants.
void validate_structure(const FiniteLStructure& m, const Signature& sig);

/// Element index per variable.
using Valuation = std::map<std::string, std::size_t>;

/// Value of a formula in one structure.
Rational evaluate(const FiniteLStructure& m, const LFormula& f, const Valuation& v);
std::size_t evaluate(const FiniteLStructure& m, const LTerm& t, const Valuation& v);

/// One element per atom of the family's space.
using Section = std::vector<std::size_t>;

class RandomFamily {
 public:
  RandomFamily(FiniteProbSpace space, Signature signature, std::vector<FiniteLStructure> structures);

  const FiniteProbSpace& space() const { return space_; }
  const Signature& signature() const { return signature_; }
  const FiniteLStructure& structure(std::size_t k) const { return structures_[k]; }
  std::size_t size() const { return structures_.size(); }

  /// Throws Error when the section does not pick an element at every atom.
  void check_section(const Section& a) const;
  /// Number of sections, saturating at SIZE_MAX.
  std::size_t section_count() const;
  /// Calls f on every section, the first atom varying fastest.
  template <class F>
  void for_each_section(F&& f) const;

 private:
  FiniteProbSpace space_;
  Signature signature_;
  std::vector<FiniteLStructure> structures_;
};

using SectionEnv = std::map<std::string, Section>;

/// Inductive semantics: connectives pointwise, quantifiers as infima and
/// suprema over all sections. Throws Error when more than `section_limit`
/// sections would have to be enumerated per quantifier.
RandomVariable bracket(const LFormula& f, const SectionEnv& env, const RandomFamily& family,
                       std::size_t section_limit = 1 << 16);

/// Pointwise semantics: the value of f in the structure at each atom.
RandomVariable pointwise(const LFormula& f, const SectionEnv& env, const RandomFamily& family);

Rational distance(const Section& a, const Section& b, const RandomFamily& family);

/// Equal to a on A and to b elsewhere.
Section glue(const Event& a_event, const Section& a, const Section& b);

struct RAxiomReport {
  bool r1 = true;
  bool r2 = true;
  bool r3 = true;
  std::size_t instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return r1 && r2 && r3; }
};

/// R1 (moduli, checked pointwise with remaining arguments drawn from the
/// samples), R2 (distance is the expected pointwise distance) and R3 (gluing
/// along every event).
RAxiomReport check_R_axioms(const RandomFamily& family, const std::vector<Section>& samples);

/// A section b minimising f(..., y := b) at every atom; ties go to the first
/// element. Exact, so epsilon only has to be non-negative.
Section inf_witness(const LFormula& f, const std::string& var, const SectionEnv& env, const RandomFamily& family,
                    const Rational& epsilon);

struct LosResult {
  Rational lhs;  // expectation of the bracket under the weighting
  Rational rhs;  // weighted sum of the pointwise values
  bool equal() const { return lhs == rhs; }
};

/// Weights may be zero (a Dirac weighting is allowed) but must sum to 1.
LosResult los_check(const LFormula& f, const SectionEnv& env, const RandomFamily& family,
                    const std::vector<Rational>& weighting);
std::vector<Rational> dirac_weighting(std::size_t num_atoms, std::size_t at);

/// Value vector of the listed formulas -> mass.
using TypeMeasure = std::map<std::vector<Rational>, Rational>;

TypeMeasure type_measure(const SectionEnv& env, const RandomFamily& family, const std::vector<LFormula>& formulas);
/// Integral of the i-th coordinate against the measure.
Rational pairing(const TypeMeasure& nu, std::size_t i);

template <class F>
void RandomFamily::for_each_section(F&& f) const {
  Section s(structures_.size(), 0);
  for (;;) {
    f(static_cast<const Section&>(s));
    std::size_t k = 0;
    while (k < s.size() && ++s[k] == structures_[k].size()) s[k++] = 0;
    if (k == s.size()) return;
  }
}

}  // namespace contlog
