#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contlog/rational.hpp"
#include "contlog/syntax.hpp"

namespace contlog {

/// Finitely many atoms with positive rational weights summing to 1.
class FiniteProbSpace {
 public:
  FiniteProbSpace(std::vector<std::string> ids, std::vector<Rational> weights);
  static FiniteProbSpace uniform(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t k) const { return ids_[k]; }
  const Rational& weight(std::size_t k) const { return weights_[k]; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<Rational>& weights() const { return weights_; }
  /// Throws Error for unknown ids.
  std::size_t index_of(const std::string& id) const;

 private:
  std::vector<std::string> ids_;
  std::vector<Rational> weights_;
};

/// [0,1]-valued function on the atoms of a space.
struct RandomVariable {
  std::vector<Rational> values;

  static RandomVariable constant(std::size_t n, const Rational& q) { return {std::vector<Rational>(n, q)}; }
  friend bool operator==(const RandomVariable&, const RandomVariable&) = default;
};

/// Throws Error unless X has one value in [0,1] per atom.
void check_rv(const FiniteProbSpace& space, const RandomVariable& x);

/// Subset of atoms, as a membership mask.
struct Event {
  std::vector<bool> member;

  static Event none(std::size_t n) { return {std::vector<bool>(n, false)}; }
  static Event all(std::size_t n) { return {std::vector<bool>(n, true)}; }
  friend bool operator==(const Event&, const Event&) = default;
};

Event meet(const Event& a, const Event& b);
Event join(const Event& a, const Event& b);
Event complement(const Event& a);
Rational mu(const FiniteProbSpace& space, const Event& a);
RandomVariable embed(const Event& a);

/// Pointwise value of a term; atoms of the formula name variables in env.
RandomVariable rv_eval(const Formula& term, const std::map<std::string, RandomVariable>& env,
                       const FiniteProbSpace& space);

/// A term in `var` equal to the piecewise-linear interpolant of t -> t^2 at
/// the points k/2^n, so it is within 4^-(n+1) of the square everywhere.
Formula square_approximant(unsigned n, const std::string& var = "x");

Rational expectation(const FiniteProbSpace& space, const RandomVariable& x);
Rational l1_dist(const FiniteProbSpace& space, const RandomVariable& x, const RandomVariable& y);

struct AxiomResidual {
  std::string axiom;                 // "RV1", ..., "RV4.6", "RV5"
  std::vector<std::size_t> samples;  // indices of the instantiating samples
  Rational residual;
};

struct RvAxiomReport {
  std::vector<AxiomResidual> residuals;  // only nonzero residuals are kept
  std::size_t instances_checked = 0;
  bool all_zero() const { return residuals.empty(); }
};

/// Evaluates every RV axiom on all ordered pairs and triples of samples.
RvAxiomReport check_rv_axioms(const FiniteProbSpace& space, const std::vector<RandomVariable>& samples);

struct ArvDefect {
  Rational value;
  RandomVariable witness;  // a minimising y
};

/// The body of ARV at y: E(y /\ neg y) \/ |E(y /\ x) - E(x)/2|.
Rational arv_body(const FiniteProbSpace& space, const RandomVariable& x, const RandomVariable& y);

/// Exact minimum of arv_body over all y.
ArvDefect arv_defect(const FiniteProbSpace& space, const RandomVariable& x);

/// E(g /\ neg g): the distance from g to the nearest event.
Rational dist_to_algebra(const FiniteProbSpace& space, const RandomVariable& g);
/// The event {g >= 1/2}, which attains dist_to_algebra.
Event nearest_event(const RandomVariable& g);

/// Applies the level-set recursion to an arbitrary family of events
/// indexed by the dyadics k/2^n. The input has 2^n + 1 entries, entry k
/// being the event for k/2^n (entries 0 and 2^n are not read); entry k of
/// the result is tau_{k/2^n}, with tau_0 empty and tau_1 everything.
std::vector<Event> tau_sequence(const std::vector<Event>& levels, unsigned n, std::size_t num_atoms);

struct TauPhiResult {
  Rational value;     // phi_n(c, f_r)
  Rational integral;  // the integral of f over c
  bool coincides = false;  // tau_r(f_s) = f_r at every level used
  bool increasing = false;
};

/// phi_n(c) = sum over k < 2^n of 2^-n mu(c minus tau_r), r = (2k+1)/2^(n+1),
/// where tau is built from the level events f_r = {f <= r}.
TauPhiResult tau_phi_interpretation(const FiniteProbSpace& space, const RandomVariable& f, unsigned n,
                                    const Event& c);

/// Tuple of values -> mass.
using JointDistribution = std::map<std::vector<Rational>, Rational>;

JointDistribution joint_distribution(const FiniteProbSpace& space, const std::vector<RandomVariable>& rvs);
bool qf_type_equal(const FiniteProbSpace& s1, const std::vector<RandomVariable>& f, const FiniteProbSpace& s2,
                   const std::vector<RandomVariable>& g);

/// Throws Error unless the blocks are disjoint, cover the space and have
/// positive measure.
void check_partition(const FiniteProbSpace& space, const std::vector<Event>& blocks);

RandomVariable cond_expectation(const FiniteProbSpace& space, const RandomVariable& x,
                                const std::vector<Event>& blocks);

/// Coarsest partition on whose blocks every input is constant; blocks are
/// ordered by their first atom.
std::vector<Event> generated_partition(std::size_t num_atoms, const std::vector<RandomVariable>& rvs);

}  // namespace contlog
