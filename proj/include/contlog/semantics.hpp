#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contlog/lp.hpp"
#include "contlog/rational.hpp"
#include "contlog/syntax.hpp"

namespace contlog {

/// Truth assignment: atom name -> value in [0,1]. A formula is true under v
/// when its value is 0.
using Assignment = std::map<std::string, Rational>;

class EvalError : public Error {
 public:
  using Error::Error;
};

/// Exact truth value. Throws EvalError for unassigned atoms or values
/// outside [0,1].
Rational eval(const Formula& f, const Assignment& v);

/// A region of [0,1]^variables on which the formula's truth function is the
/// affine `value`. `constraints` include the box constraints.
struct BranchCell {
  std::vector<std::string> variables;
  std::vector<LinearConstraint> constraints;
  AffineExpr value;

  bool contains(const Assignment& v) const;
};

/// One cell per feasible sign choice of every Monus node (zero branch:
/// left <= right with value 0; positive branch: left >= right with value
/// left - right). Empty cells are dropped, lower-dimensional ones are kept.
std::vector<BranchCell> enumerate_branches(const Formula& f);

struct SupResult {
  Rational value;
  Assignment witness;  // lexicographically least maximiser
};

/// Exact maximum of the truth function over [0,1]^atoms.
SupResult sup_value(const Formula& f);

struct ValidityResult {
  bool valid = false;
  std::optional<Assignment> counterexample;  // eval > 0 there
};

/// Valid iff the formula evaluates to 0 under every assignment.
ValidityResult is_valid(const Formula& f);

/// A common model of all formulas in `sigma`, if one exists.
std::optional<Assignment> is_satisfiable(const std::vector<Formula>& sigma);

struct EntailmentResult {
  bool holds = false;
  std::optional<Assignment> countermodel;  // models sigma, goal > 0
};

/// Every model of `sigma` is a model of `goal`.
EntailmentResult entails_semantic(const std::vector<Formula>& sigma, const Formula& goal);

/// goal - m*psi_0 - ... - m*psi_{n-1}, left nested.
Formula entailment_chain(const std::vector<Formula>& sigma, const Formula& goal, unsigned m);

/// Least m <= cap for which entailment_chain(sigma, goal, m) is valid.
std::optional<unsigned> entails_witness(const std::vector<Formula>& sigma, const Formula& goal, unsigned cap);

/// Least n <= cap for which 1 - n*phi_0 - ... - n*phi_{k-1} is valid.
std::optional<unsigned> unsat_witness(const std::vector<Formula>& sigma, unsigned cap);

/// Sorted union of the atoms of all formulas.
std::vector<std::string> collect_atoms(const std::vector<Formula>& fs);

}  // namespace contlog
