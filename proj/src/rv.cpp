#include "contlog/rv.hpp"

#include <algorithm>

#include "contlog/branching.hpp"

namespace contlog {

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> ids, std::vector<Rational> weights)
    : ids_(std::move(ids)), weights_(std::move(weights)) {
  if (ids_.empty()) throw Error("a probability space needs at least one atom");
  if (ids_.size() != weights_.size()) throw Error("atom and weight counts differ");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (sgn(w) <= 0) throw Error("atom weights must be positive");
    total += w;
  }
  if (total != 1) throw Error("atom weights sum to " + to_string(total) + ", not 1");
  std::vector<std::string> sorted = ids_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate atom id");
}

FiniteProbSpace FiniteProbSpace::uniform(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < n; ++k) ids.push_back("w" + std::to_string(k + 1));
  return FiniteProbSpace(std::move(ids), std::vector<Rational>(n, Rational(1, n)));
}

std::size_t FiniteProbSpace::index_of(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw Error("unknown atom '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

void check_rv(const FiniteProbSpace& space, const RandomVariable& x) {
  if (x.values.size() != space.size()) throw Error("random variable does not match the space");
  for (const auto& v : x.values)
    if (!in_unit_interval(v)) throw Error("random variable value " + to_string(v) + " is outside [0,1]");
}

namespace {

void same_size(const Event& a, const Event& b) {
  if (a.member.size() != b.member.size()) throw Error("events live on different spaces");
}

void same_space(const FiniteProbSpace& space, const RandomVariable& x) {
  if (x.values.size() != space.size()) throw Error("random variable does not match the space");
}

}  // namespace

Event meet(const Event& a, const Event& b) {
  same_size(a, b);
  Event out = a;
  for (std::size_t k = 0; k < out.member.size(); ++k) out.member[k] = a.member[k] && b.member[k];
  return out;
}

Event join(const Event& a, const Event& b) {
  same_size(a, b);
  Event out = a;
  for (std::size_t k = 0; k < out.member.size(); ++k) out.member[k] = a.member[k] || b.member[k];
  return out;
}

Event complement(const Event& a) {
  Event out = a;
  out.member.flip();
  return out;
}

Rational mu(const FiniteProbSpace& space, const Event& a) {
  if (a.member.size() != space.size()) throw Error("event does not match the space");
  Rational m = 0;
  for (std::size_t k = 0; k < space.size(); ++k)
    if (a.member[k]) m += space.weight(k);
  return m;
}

RandomVariable embed(const Event& a) {
  RandomVariable x;
  for (bool b : a.member) x.values.emplace_back(b ? 1 : 0);
  return x;
}

Formula square_approximant(unsigned n, const std::string& var) {
  if (n == 0 || n > 16) throw Error("approximation stage must lie in 1..16");
  // 2^-n x plus 2^(1-n) (x - k/2^n) for each interior knot; the partial sums
  // never exceed the interpolant, so the truncated sums are exact.
  const Formula x = Formula::atom(var);
  Formula acc = x;
  for (unsigned i = 0; i < n; ++i) acc = Formula::half(acc);
  for (unsigned k = 1; k < (1u << n); ++k) {
    Formula slope = Formula::monus(x, dyadic_constant(k, n));
    for (unsigned i = 1; i < n; ++i) slope = Formula::half(slope);
    acc = oplus(acc, slope);
  }
  return acc;
}

RandomVariable rv_eval(const Formula& term, const std::map<std::string, RandomVariable>& env,
                       const FiniteProbSpace& space) {
  const std::size_t n = space.size();
  switch (term.kind()) {
    case Formula::Kind::Zero:
      return RandomVariable::constant(n, 0);
    case Formula::Kind::Atom: {
      auto it = env.find(term.name());
      if (it == env.end()) throw Error("unbound variable '" + term.name() + "'");
      same_space(space, it->second);
      return it->second;
    }
    case Formula::Kind::Neg: {
      RandomVariable x = rv_eval(term.arg(), env, space);
      for (auto& v : x.values) v = 1 - v;
      return x;
    }
    case Formula::Kind::Half: {
      RandomVariable x = rv_eval(term.arg(), env, space);
      for (auto& v : x.values) v /= 2;
      return x;
    }
    case Formula::Kind::Monus: {
      RandomVariable x = rv_eval(term.lhs(), env, space);
      RandomVariable y = rv_eval(term.rhs(), env, space);
      for (std::size_t k = 0; k < n; ++k) x.values[k] = monus(x.values[k], y.values[k]);
      return x;
    }
  }
  return RandomVariable::constant(n, 0);
}

Rational expectation(const FiniteProbSpace& space, const RandomVariable& x) {
  same_space(space, x);
  Rational e = 0;
  for (std::size_t k = 0; k < space.size(); ++k) e += space.weight(k) * x.values[k];
  return e;
}

Rational l1_dist(const FiniteProbSpace& space, const RandomVariable& x, const RandomVariable& y) {
  same_space(space, x);
  same_space(space, y);
  Rational d = 0;
  for (std::size_t k = 0; k < space.size(); ++k) d += space.weight(k) * abs(x.values[k] - y.values[k]);
  return d;
}

RvAxiomReport check_rv_axioms(const FiniteProbSpace& space, const std::vector<RandomVariable>& samples) {
  for (const auto& x : samples) check_rv(space, x);
  static const Formula x_minus_y = parse_formula("(x - y)");
  static const Formula y_minus_x = parse_formula("(y - x)");
  static const Formula y_and_x = parse_formula("(y /\\ x)");
  static const Formula half_x = parse_formula("half x");
  static const Formula x_minus_half_x = parse_formula("(x - half x)");
  // Terms required to vanish identically.
  static const std::vector<std::pair<std::string, Formula>> zero_terms = {
      {"RV4.1", parse_formula("((x - y) - x)")},
      {"RV4.2", parse_formula("(((x - z) - (x - y)) - (y - z))")},
      {"RV4.3", parse_formula("((x /\\ y) - (y /\\ x))")},
      {"RV4.4", parse_formula("((x - y) - (neg y - neg x))")},
      {"RV4.5", parse_formula("(half x - (x - half x))")},
      {"RV4.6", parse_formula("((x - half x) - half x)")},
  };

  RvAxiomReport report;
  auto record = [&](std::string axiom, std::vector<std::size_t> idx, Rational r) {
    ++report.instances_checked;
    if (sgn(r) != 0) report.residuals.push_back({std::move(axiom), std::move(idx), std::move(r)});
  };

  record("RV2", {}, expectation(space, RandomVariable::constant(space.size(), 1)) - 1);
  const std::size_t m = samples.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::map<std::string, RandomVariable> env{{"x", samples[i]}};
    record("RV5", {i}, l1_dist(space, rv_eval(half_x, env, space), rv_eval(x_minus_half_x, env, space)));
    for (std::size_t j = 0; j < m; ++j) {
      env["y"] = samples[j];
      auto e = [&](const Formula& t) { return expectation(space, rv_eval(t, env, space)); };
      record("RV1", {i, j}, expectation(space, samples[i]) - e(x_minus_y) - e(y_and_x));
      record("RV3", {i, j}, l1_dist(space, samples[i], samples[j]) - e(x_minus_y) - e(y_minus_x));
      for (std::size_t k = 0; k < m; ++k) {
        env["z"] = samples[k];
        for (const auto& [name, term] : zero_terms) {
          auto vars = atoms(term);
          if (!vars.count("z") && k > 0) continue;
          if (!vars.count("y") && j > 0) continue;
          std::vector<std::size_t> idx{i};
          if (vars.count("y")) idx.push_back(j);
          if (vars.count("z")) idx.push_back(k);
          record(name, std::move(idx), e(term));
        }
      }
    }
  }
  return report;
}

Rational arv_body(const FiniteProbSpace& space, const RandomVariable& x, const RandomVariable& y) {
  same_space(space, x);
  same_space(space, y);
  Rational a = 0, b = 0, ex = expectation(space, x);
  for (std::size_t k = 0; k < space.size(); ++k) {
    a += space.weight(k) * rmin(y.values[k], 1 - y.values[k]);
    b += space.weight(k) * rmin(y.values[k], x.values[k]);
  }
  return rmax(a, abs(b - ex / 2));
}

ArvDefect arv_defect(const FiniteProbSpace& space, const RandomVariable& x) {
  check_rv(space, x);
  const std::size_t n = space.size();
  PlGraph g(n);
  PlForm a, b = PlGraph::constant(-expectation(space, x) / 2);
  for (std::size_t k = 0; k < n; ++k) {
    PlForm y = g.var(k);
    a = a + g.min(y, PlGraph::constant(1) - y) * space.weight(k);
    b = b + g.min(y, PlGraph::constant(x.values[k])) * space.weight(k);
  }
  PlForm body = g.max(a, g.abs(b));
  auto best = pl_maximize(g, body * Rational(-1));
  return ArvDefect{-best->value, RandomVariable{best->point}};
}

Rational dist_to_algebra(const FiniteProbSpace& space, const RandomVariable& g) {
  check_rv(space, g);
  Rational d = 0;
  for (std::size_t k = 0; k < space.size(); ++k) d += space.weight(k) * rmin(g.values[k], 1 - g.values[k]);
  return d;
}

Event nearest_event(const RandomVariable& g) {
  Event a;
  for (const auto& v : g.values) a.member.push_back(v >= Rational(1, 2));
  return a;
}

std::vector<Event> tau_sequence(const std::vector<Event>& levels, unsigned n, std::size_t num_atoms) {
  const std::size_t top = std::size_t{1} << n;
  if (levels.size() != top + 1) throw Error("expected one event per dyadic level");
  std::vector<Event> tau(top + 1, Event::none(num_atoms));
  tau[top] = Event::all(num_atoms);
  for (unsigned m = 1; m <= n; ++m) {
    const std::size_t step = std::size_t{1} << (n - m);
    for (std::size_t k = step; k < top; k += 2 * step)
      tau[k] = meet(join(levels[k], tau[k - step]), tau[k + step]);
  }
  return tau;
}

TauPhiResult tau_phi_interpretation(const FiniteProbSpace& space, const RandomVariable& f, unsigned n,
                                    const Event& c) {
  if (n == 0) throw Error("tau_phi needs n >= 1");
  if (n > 20) throw Error("tau_phi stage too large");
  check_rv(space, f);
  if (c.member.size() != space.size()) throw Error("event does not match the space");
  const unsigned fine = n + 1;
  const std::size_t top = std::size_t{1} << fine;
  const Rational unit = dyadic(fine);

  std::vector<Event> levels(top + 1, Event::none(space.size()));
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t w = 0; w < space.size(); ++w) levels[k].member[w] = f.values[w] <= unit * static_cast<long>(k);
  std::vector<Event> tau = tau_sequence(levels, fine, space.size());

  TauPhiResult out;
  out.coincides = true;
  out.increasing = true;
  for (std::size_t k = 1; k < top; ++k) {
    if (tau[k] != levels[k]) out.coincides = false;
    if (meet(tau[k - 1], tau[k]) != tau[k - 1]) out.increasing = false;
  }
  if (meet(tau[top - 1], tau[top]) != tau[top - 1]) out.increasing = false;

  Rational step = dyadic(n);
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k)
    out.value += step * mu(space, meet(c, complement(tau[2 * k + 1])));
  for (std::size_t w = 0; w < space.size(); ++w)
    if (c.member[w]) out.integral += space.weight(w) * f.values[w];
  return out;
}

JointDistribution joint_distribution(const FiniteProbSpace& space, const std::vector<RandomVariable>& rvs) {
  for (const auto& x : rvs) same_space(space, x);
  JointDistribution out;
  for (std::size_t k = 0; k < space.size(); ++k) {
    std::vector<Rational> key;
    for (const auto& x : rvs) key.push_back(x.values[k]);
    out[key] += space.weight(k);
  }
  return out;
}

bool qf_type_equal(const FiniteProbSpace& s1, const std::vector<RandomVariable>& f, const FiniteProbSpace& s2,
                   const std::vector<RandomVariable>& g) {
  if (f.size() != g.size()) throw Error("tuples have different lengths");
  return joint_distribution(s1, f) == joint_distribution(s2, g);
}

void check_partition(const FiniteProbSpace& space, const std::vector<Event>& blocks) {
  std::vector<int> hits(space.size(), 0);
  for (const auto& b : blocks) {
    if (b.member.size() != space.size()) throw Error("partition block does not match the space");
    if (sgn(mu(space, b)) == 0) throw Error("partition block is empty");
    for (std::size_t k = 0; k < space.size(); ++k) hits[k] += b.member[k];
  }
  for (int h : hits) {
    if (h == 0) throw Error("partition does not cover the space");
    if (h > 1) throw Error("partition blocks overlap");
  }
}

RandomVariable cond_expectation(const FiniteProbSpace& space, const RandomVariable& x,
                                const std::vector<Event>& blocks) {
  check_rv(space, x);
  check_partition(space, blocks);
  RandomVariable out = x;
  for (const auto& b : blocks) {
    Rational mass = 0, sum = 0;
    for (std::size_t k = 0; k < space.size(); ++k)
      if (b.member[k]) {
        mass += space.weight(k);
        sum += space.weight(k) * x.values[k];
      }
    Rational mean = sum / mass;
    for (std::size_t k = 0; k < space.size(); ++k)
      if (b.member[k]) out.values[k] = mean;
  }
  return out;
}

std::vector<Event> generated_partition(std::size_t num_atoms, const std::vector<RandomVariable>& rvs) {
  for (const auto& x : rvs)
    if (x.values.size() != num_atoms) throw Error("random variable does not match the space");
  std::vector<Event> blocks;
  std::vector<std::size_t> representative;
  for (std::size_t k = 0; k < num_atoms; ++k) {
    bool placed = false;
    for (std::size_t b = 0; b < blocks.size() && !placed; ++b) {
      std::size_t r = representative[b];
      if (std::all_of(rvs.begin(), rvs.end(), [&](const RandomVariable& x) { return x.values[r] == x.values[k]; })) {
        blocks[b].member[k] = true;
        placed = true;
      }
    }
    if (!placed) {
      blocks.push_back(Event::none(num_atoms));
      blocks.back().member[k] = true;
      representative.push_back(k);
    }
  }
  return blocks;
}

}  // namespace contlog
