#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "contlog/rational.hpp"

namespace contlog {

/// Raised on malformed formula text. `offset` is the byte offset of the
/// offending token in the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Propositional formula over the connectives neg, half and truncated
/// subtraction. Immutable; copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { Zero, Atom, Neg, Half, Monus };

  Formula();  // the constant 0

  static Formula zero() { return Formula(); }
  static Formula atom(std::string name);
  static Formula neg(const Formula& f);
  static Formula half(const Formula& f);
  static Formula monus(const Formula& lhs, const Formula& rhs);

  Kind kind() const;
  const std::string& name() const;
  /// Operand of Neg/Half.
  Formula arg() const;
  Formula lhs() const;
  Formula rhs() const;

  std::size_t hash() const;
  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Total structural order, used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

std::set<std::string> atoms(const Formula& f);
std::size_t count_monus(const Formula& f);
/// Number of structurally distinct Monus subformulas.
std::size_t count_distinct_monus(const Formula& f);
/// Distinct Monus subformulas across all formulas.
std::size_t count_distinct_monus(const std::vector<Formula>& fs);
bool contains_half(const Formula& f);
/// Replaces atoms by formulas; atoms missing from the map stay untouched.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& subst);
/// Replaces every occurrence of `target` by `replacement`.
Formula replace_all(const Formula& f, const Formula& target, const Formula& replacement);

Formula parse_formula(std::string_view text);
std::string print(const Formula& f);

// ---------------------------------------------------------------------------
// First-order continuous formulas over a signature.

class LTerm {
 public:
  static LTerm var(std::string name);
  static LTerm apply(std::string function, std::vector<LTerm> args);

  bool is_var() const;
  const std::string& name() const;
  const std::vector<LTerm>& args() const;

  friend bool operator==(const LTerm& a, const LTerm& b);

 private:
  struct Node;
  explicit LTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class LFormula {
 public:
  enum class Kind : std::uint8_t { Zero, Pred, Neg, Half, Monus, Inf, Sup };

  LFormula();  // the constant 0

  static LFormula zero() { return LFormula(); }
  static LFormula pred(std::string name, std::vector<LTerm> args);
  static LFormula neg(const LFormula& f);
  static LFormula half(const LFormula& f);
  static LFormula monus(const LFormula& lhs, const LFormula& rhs);
  static LFormula inf(std::string var, const LFormula& body);
  static LFormula sup(std::string var, const LFormula& body);

  Kind kind() const;
  /// Predicate name for Pred, bound variable for Inf/Sup.
  const std::string& name() const;
  const std::vector<LTerm>& args() const;
  LFormula arg() const;  // Neg, Half, and the body of Inf/Sup
  LFormula lhs() const;
  LFormula rhs() const;

  std::size_t depth() const;
  std::size_t quantifier_count() const;

  friend bool operator==(const LFormula& a, const LFormula& b);

 private:
  struct Node;
  explicit LFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_variables(const LFormula& f);
LFormula parse_lformula(std::string_view text);
std::string print(const LFormula& f);
std::string print(const LTerm& t);

/// A function or predicate symbol. Each argument carries a Lipschitz constant
/// lambda, read as the uniform continuity modulus delta(eps) = eps / lambda.
struct SymbolSpec {
  std::string name;
  std::size_t arity = 0;
  std::vector<Rational> lipschitz;
};

/// Single-sorted continuous signature. Always contains the binary metric
/// predicate `d` with Lipschitz constant 1 in both arguments.
class Signature {
 public:
  Signature();

  void add_function(SymbolSpec spec);
  void add_predicate(SymbolSpec spec);

  const SymbolSpec* function(const std::string& name) const;
  const SymbolSpec* predicate(const std::string& name) const;
  const std::map<std::string, SymbolSpec>& functions() const { return functions_; }
  const std::map<std::string, SymbolSpec>& predicates() const { return predicates_; }

  /// Throws Error when a symbol is unknown or used with the wrong arity.
  void check(const LFormula& f) const;
  void check(const LTerm& t) const;

 private:
  std::map<std::string, SymbolSpec> functions_;
  std::map<std::string, SymbolSpec> predicates_;
};

// ---------------------------------------------------------------------------
// Derived connectives. These expand to core nodes only and work for both
// Formula and LFormula.

template <class F>
F one() {
  return F::neg(F::monus(F::zero(), F::zero()));
}

template <class F>
F conj(const F& a, const F& b) {
  return F::monus(a, F::monus(a, b));
}

template <class F>
F disj(const F& a, const F& b) {
  return F::neg(conj(F::neg(a), F::neg(b)));
}

template <class F>
F abs_diff(const F& a, const F& b) {
  return disj(F::monus(a, b), F::monus(b, a));
}

/// Truncated addition min(1, a + b).
template <class F>
F oplus(const F& a, const F& b) {
  return F::neg(F::monus(F::neg(a), b));
}

/// The constant 2^-n, i.e. half applied n times to 1.
template <class F>
F dyadic_power(unsigned n) {
  F f = one<F>();
  for (unsigned i = 0; i < n; ++i) f = F::half(f);
  return f;
}

/// psi - n*phi, nested to the left; n = 0 gives psi.
template <class F>
F monus_chain(const F& psi, unsigned n, const F& phi) {
  F f = psi;
  for (unsigned i = 0; i < n; ++i) f = F::monus(f, phi);
  return f;
}

/// m-fold truncated sum f (+) ... (+) f; m = 0 gives 0.
template <class F>
F multiple(unsigned m, const F& f) {
  if (m == 0) return F::zero();
  F acc = f;
  for (unsigned i = 1; i < m; ++i) acc = oplus(acc, f);
  return acc;
}

/// The dyadic constant k / 2^n as a sum of powers 2^-j; requires k <= 2^n.
Formula dyadic_constant(const Integer& k, unsigned n);

}  // namespace contlog
