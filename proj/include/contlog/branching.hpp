#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contlog/lp.hpp"
#include "contlog/rational.hpp"
#include "contlog/syntax.hpp"

namespace contlog {

/// Reference to a leaf of a piecewise-linear expression: either an input
/// variable or the positive part max(0, .) of an earlier expression.
struct PlRef {
  enum class Kind : std::uint8_t { Var, Pos };
  Kind kind;
  std::uint32_t index;

  friend auto operator<=>(const PlRef&, const PlRef&) = default;
};

/// constant + sum of coefficient * leaf. Terms are sorted with no zero
/// coefficients, so equal forms compare equal.
struct PlForm {
  Rational constant;
  std::vector<std::pair<PlRef, Rational>> terms;

  bool is_constant() const { return terms.empty(); }
  friend bool operator==(const PlForm&, const PlForm&) = default;
};

PlForm operator+(const PlForm& a, const PlForm& b);
PlForm operator-(const PlForm& a, const PlForm& b);
PlForm operator*(const PlForm& a, const Rational& q);

/// A hash-consed DAG of positive-part nodes over `num_vars` variables in
/// [0,1]. Structurally equal subexpressions share one node, hence one sign
/// decision during branching.
class PlGraph {
 public:
  explicit PlGraph(std::size_t num_vars, bool fold_constants = true)
      : num_vars_(num_vars), fold_constants_(fold_constants) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_pos() const { return pos_inputs_.size(); }
  const PlForm& pos_input(std::size_t k) const { return pos_inputs_[k]; }

  PlForm var(std::size_t i) const;
  static PlForm constant(Rational q);
  /// max(0, input)
  PlForm pos(const PlForm& input);
  PlForm min(const PlForm& a, const PlForm& b) { return a - pos(a - b); }
  PlForm max(const PlForm& a, const PlForm& b) { return b + pos(a - b); }
  PlForm abs(const PlForm& a) { return pos(a) + pos(a * Rational(-1)); }

  /// Compiles a formula whose atoms are looked up in `vars` (sorted names).
  PlForm compile(const Formula& f, const std::vector<std::string>& vars);

  /// Exact value at a point.
  Rational eval(const PlForm& f, std::span<const Rational> point) const;

 private:
  std::size_t num_vars_;
  bool fold_constants_;
  std::vector<PlForm> pos_inputs_;
  std::map<PlForm, std::uint32_t, bool (*)(const PlForm&, const PlForm&)> index_{&form_less};

  static bool form_less(const PlForm& a, const PlForm& b);
};

/// One region of the sign decomposition: the conjunction of `constraints`
/// within the unit box, on which every positive-part node is affine.
struct Cell {
  std::vector<LinearConstraint> constraints;
  std::vector<AffineExpr> outputs;  // one per requested output form
  std::vector<Rational> witness;    // a point of the region
};

enum class Pruning {
  /// Drop only empty children; a node whose sign is constant on the cell
  /// still produces both children if both are non-empty (faces included).
  InfeasibleOnly,
  /// Split only when the node's input changes sign inside the cell.
  Redundant,
};

struct BranchOptions {
  Pruning pruning = Pruning::Redundant;
};

/// Enumerates the cells of the sign decomposition of `graph` restricted to
/// points where every form in `side_zero` is <= 0. Calls `visit` for each
/// leaf cell with the affine restrictions of `outputs`; enumeration stops
/// when `visit` returns false.
void enumerate_cells(const PlGraph& graph, const std::vector<PlForm>& outputs, const std::vector<PlForm>& side_zero,
                     const BranchOptions& options, const std::function<bool(const Cell&)>& visit);

struct PlMaximum {
  Rational value;
  std::vector<Rational> point;  // lexicographically least maximiser
};

/// Exact maximum of `objective` over the box subject to `side_zero` forms
/// being <= 0; nullopt when that region is empty.
std::optional<PlMaximum> pl_maximize(const PlGraph& graph, const PlForm& objective,
                                     const std::vector<PlForm>& side_zero = {});

/// Finds a point where `objective` > `threshold` (subject to `side_zero`),
/// stopping at the first cell that has one.
std::optional<std::vector<Rational>> pl_exceeds(const PlGraph& graph, const PlForm& objective,
                                                const Rational& threshold, const std::vector<PlForm>& side_zero = {});

}  // namespace contlog
