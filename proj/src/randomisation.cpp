#include "contlog/randomisation.hpp"

#include <algorithm>
#include <limits>

namespace contlog {

namespace {

std::size_t table_size(std::size_t universe, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < arity; ++k) n *= universe;
  return n;
}

std::size_t flat_index(std::size_t universe, const std::vector<std::size_t>& args) {
  std::size_t idx = 0;
  for (std::size_t a : args) idx = idx * universe + a;
  return idx;
}

// Calls f on every tuple in {0..universe-1}^arity.
template <class F>
void for_each_tuple(std::size_t universe, std::size_t arity, F&& f) {
  std::vector<std::size_t> t(arity, 0);
  if (universe == 0 && arity > 0) return;
  for (;;) {
    f(static_cast<const std::vector<std::size_t>&>(t));
    std::size_t k = arity;
    while (k > 0 && ++t[k - 1] == universe) t[--k] = 0;
    if (k == 0) return;
  }
}

}  // namespace

std::size_t FiniteLStructure::index_of(const std::string& id) const {
  auto it = std::find(universe.begin(), universe.end(), id);
  if (it == universe.end()) throw Error("unknown element '" + id + "'");
  return static_cast<std::size_t>(it - universe.begin());
}

Rational FiniteLStructure::predicate_value(const std::string& name, const std::vector<std::size_t>& args) const {
  if (name == "d") {
    if (args.size() != 2) throw Error("d is binary");
    return metric[args[0]][args[1]];
  }
  auto it = predicates.find(name);
  if (it == predicates.end()) throw Error("structure has no predicate '" + name + "'");
  return it->second.at(flat_index(size(), args));
}

std::size_t FiniteLStructure::function_value(const std::string& name, const std::vector<std::size_t>& args) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw Error("structure has no function '" + name + "'");
  return it->second.at(flat_index(size(), args));
}

void validate_structure(const FiniteLStructure& m, const Signature& sig) {
  const std::size_t n = m.size();
  if (n == 0) throw Error("empty universe");
  {
    std::vector<std::string> ids = m.universe;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw Error("duplicate element id");
  }
  if (m.metric.size() != n) throw Error("metric table has the wrong size");
  for (const auto& row : m.metric)
    if (row.size() != n) throw Error("metric table has the wrong size");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& d = m.metric[a][b];
      if (!in_unit_interval(d)) throw Error("metric value outside [0,1]");
      if (a == b && sgn(d) != 0) throw Error("d(" + m.universe[a] + "," + m.universe[a] + ") is not 0");
      if (a != b && sgn(d) == 0) throw Error("distinct elements at distance 0");
      if (d != m.metric[b][a]) throw Error("metric is not symmetric");
      for (std::size_t c = 0; c < n; ++c)
        if (d > m.metric[a][c] + m.metric[c][b]) throw Error("metric violates the triangle inequality");
    }

  for (const auto& [name, table] : m.predicates)
    if (!sig.predicate(name) || name == "d") throw Error("predicate '" + name + "' is not in the signature");
  for (const auto& [name, table] : m.functions)
    if (!sig.function(name)) throw Error("function '" + name + "' is not in the signature");

  for (const auto& [name, spec] : sig.predicates()) {
    if (name == "d") continue;
    auto it = m.predicates.find(name);
    if (it == m.predicates.end()) throw Error("missing table for predicate '" + name + "'");
    if (it->second.size() != table_size(n, spec.arity)) throw Error("table for '" + name + "' has the wrong size");
    for (const auto& v : it->second)
      if (!in_unit_interval(v)) throw Error("value of '" + name + "' outside [0,1]");
    for_each_tuple(n, spec.arity, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i < spec.arity; ++i)
        for (std::size_t b = 0; b < n; ++b) {
          std::vector<std::size_t> u = t;
          u[i] = b;
          Rational diff = abs(m.predicate_value(name, t) - m.predicate_value(name, u));
          if (diff > spec.lipschitz[i] * m.metric[t[i]][b])
            throw Error("predicate '" + name + "' violates its modulus in argument " + std::to_string(i + 1));
        }
    });
  }
  for (const auto& [name, spec] : sig.functions()) {
    auto it = m.functions.find(name);
    if (it == m.functions.end()) throw Error("missing table for function '" + name + "'");
    if (it->second.size() != table_size(n, spec.arity)) throw Error("table for '" + name + "' has the wrong size");
    for (std::size_t v : it->second)
      if (v >= n) throw Error("function '" + name + "' leaves the universe");
    for_each_tuple(n, spec.arity, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i < spec.arity; ++i)
        for (std::size_t b = 0; b < n; ++b) {
          std::vector<std::size_t> u = t;
          u[i] = b;
          const Rational& dist = m.metric[m.function_value(name, t)][m.function_value(name, u)];
          if (dist > spec.lipschitz[i] * m.metric[t[i]][b])
            throw Error("function '" + name + "' violates its modulus in argument " + std::to_string(i + 1));
        }
    });
  }
}

std::size_t evaluate(const FiniteLStructure& m, const LTerm& t, const Valuation& v) {
  if (t.is_var()) {
    auto it = v.find(t.name());
    if (it == v.end()) throw Error("unbound variable '" + t.name() + "'");
    return it->second;
  }
  std::vector<std::size_t> args;
  for (const auto& a : t.args()) args.push_back(evaluate(m, a, v));
  return m.function_value(t.name(), args);
}

Rational evaluate(const FiniteLStructure& m, const LFormula& f, const Valuation& v) {
  switch (f.kind()) {
    case LFormula::Kind::Zero:
      return 0;
    case LFormula::Kind::Pred: {
      std::vector<std::size_t> args;
      for (const auto& a : f.args()) args.push_back(evaluate(m, a, v));
      return m.predicate_value(f.name(), args);
    }
    case LFormula::Kind::Neg:
      return 1 - evaluate(m, f.arg(), v);
    case LFormula::Kind::Half:
      return evaluate(m, f.arg(), v) / 2;
    case LFormula::Kind::Monus:
      return monus(evaluate(m, f.lhs(), v), evaluate(m, f.rhs(), v));
    case LFormula::Kind::Inf:
    case LFormula::Kind::Sup: {
      Valuation w = v;
      std::optional<Rational> best;
      for (std::size_t e = 0; e < m.size(); ++e) {
        w[f.name()] = e;
        Rational x = evaluate(m, f.arg(), w);
        if (!best || (f.kind() == LFormula::Kind::Inf ? x < *best : x > *best)) best = x;
      }
      return *best;
    }
  }
  return 0;
}

RandomFamily::RandomFamily(FiniteProbSpace space, Signature signature, std::vector<FiniteLStructure> structures)
    : space_(std::move(space)), signature_(std::move(signature)), structures_(std::move(structures)) {
  if (structures_.size() != space_.size()) throw Error("need one structure per atom");
  for (std::size_t k = 0; k < structures_.size(); ++k) {
    try {
      validate_structure(structures_[k], signature_);
    } catch (const Error& e) {
      throw Error("structure at atom '" + space_.id(k) + "': " + e.what());
    }
  }
}

void RandomFamily::check_section(const Section& a) const {
  if (a.size() != structures_.size()) throw Error("section length does not match the family");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] >= structures_[k].size()) throw Error("section leaves the universe at atom '" + space_.id(k) + "'");
}

std::size_t RandomFamily::section_count() const {
  std::size_t n = 1;
  for (const auto& m : structures_) {
    if (n > std::numeric_limits<std::size_t>::max() / m.size()) return std::numeric_limits<std::size_t>::max();
    n *= m.size();
  }
  return n;
}

namespace {

Valuation valuation_at(const SectionEnv& env, std::size_t atom) {
  Valuation v;
  for (const auto& [name, s] : env) v[name] = s[atom];
  return v;
}

void check_env(const SectionEnv& env, const RandomFamily& family) {
  for (const auto& [name, s] : env) family.check_section(s);
}

RandomVariable bracket_rec(const LFormula& f, SectionEnv& env, const RandomFamily& family) {
  const std::size_t n = family.size();
  RandomVariable out = RandomVariable::constant(n, 0);
  switch (f.kind()) {
    case LFormula::Kind::Zero:
      break;
    case LFormula::Kind::Pred:
      for (std::size_t k = 0; k < n; ++k) out.values[k] = evaluate(family.structure(k), f, valuation_at(env, k));
      break;
    case LFormula::Kind::Neg:
      out = bracket_rec(f.arg(), env, family);
      for (auto& v : out.values) v = 1 - v;
      break;
    case LFormula::Kind::Half:
      out = bracket_rec(f.arg(), env, family);
      for (auto& v : out.values) v /= 2;
      break;
    case LFormula::Kind::Monus: {
      out = bracket_rec(f.lhs(), env, family);
      RandomVariable r = bracket_rec(f.rhs(), env, family);
      for (std::size_t k = 0; k < n; ++k) out.values[k] = monus(out.values[k], r.values[k]);
      break;
    }
    case LFormula::Kind::Inf:
    case LFormula::Kind::Sup: {
      // Infimum (supremum) in the lattice of random variables, over all
      // sections substituted for the bound variable.
      const bool is_inf = f.kind() == LFormula::Kind::Inf;
      std::optional<Section> saved;
      if (auto it = env.find(f.name()); it != env.end()) saved = it->second;
      bool first = true;
      family.for_each_section([&](const Section& s) {
        env[f.name()] = s;
        RandomVariable x = bracket_rec(f.arg(), env, family);
        if (first) {
          out = std::move(x);
          first = false;
          return;
        }
        for (std::size_t k = 0; k < n; ++k)
          out.values[k] = is_inf ? rmin(out.values[k], x.values[k]) : rmax(out.values[k], x.values[k]);
      });
      if (saved) {
        env[f.name()] = *saved;
      } else {
        env.erase(f.name());
      }
      break;
    }
  }
  return out;
}

}  // namespace

RandomVariable bracket(const LFormula& f, const SectionEnv& env, const RandomFamily& family,
                       std::size_t section_limit) {
  family.signature().check(f);
  check_env(env, family);
  if (f.quantifier_count() > 0 && family.section_count() > section_limit)
    throw Error("too many sections to enumerate");
  SectionEnv scratch = env;
  return bracket_rec(f, scratch, family);
}

RandomVariable pointwise(const LFormula& f, const SectionEnv& env, const RandomFamily& family) {
  family.signature().check(f);
  check_env(env, family);
  RandomVariable out;
  for (std::size_t k = 0; k < family.size(); ++k)
    out.values.push_back(evaluate(family.structure(k), f, valuation_at(env, k)));
  return out;
}

Rational distance(const Section& a, const Section& b, const RandomFamily& family) {
  family.check_section(a);
  family.check_section(b);
  Rational d = 0;
  for (std::size_t k = 0; k < family.size(); ++k) d += family.space().weight(k) * family.structure(k).metric[a[k]][b[k]];
  return d;
}

Section glue(const Event& a_event, const Section& a, const Section& b) {
  if (a.size() != b.size() || a_event.member.size() != a.size()) throw Error("gluing data of different lengths");
  Section c = b;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (a_event.member[k]) c[k] = a[k];
  return c;
}

RAxiomReport check_R_axioms(const RandomFamily& family, const std::vector<Section>& samples) {
  for (const auto& s : samples) family.check_section(s);
  const std::size_t n = family.size();
  RAxiomReport report;
  auto fail = [&](bool& flag, std::string what) {
    flag = false;
    if (report.failures.size() < 20) report.failures.push_back(std::move(what));
  };

  // R1: each symbol's modulus, pointwise, in every argument position.
  auto r1_symbol = [&](const SymbolSpec& spec, bool is_pred) {
    if (spec.arity == 0 || samples.empty()) return;
    std::vector<std::size_t> choice(spec.arity, 0);
    for (;;) {
      for (std::size_t i = 0; i < spec.arity; ++i)
        for (const auto& b : samples) {
          ++report.instances;
          for (std::size_t k = 0; k < n; ++k) {
            const FiniteLStructure& m = family.structure(k);
            std::vector<std::size_t> x, y;
            for (std::size_t p = 0; p < spec.arity; ++p) x.push_back(samples[choice[p]][k]);
            y = x;
            y[i] = b[k];
            Rational lhs = is_pred ? Rational(abs(m.predicate_value(spec.name, x) - m.predicate_value(spec.name, y)))
                                   : m.metric[m.function_value(spec.name, x)][m.function_value(spec.name, y)];
            if (lhs > spec.lipschitz[i] * m.metric[x[i]][y[i]])
              fail(report.r1, "R1 " + spec.name + " argument " + std::to_string(i + 1) + " at atom " +
                                  family.space().id(k));
          }
        }
      std::size_t p = 0;
      while (p < choice.size() && ++choice[p] == samples.size()) choice[p++] = 0;
      if (p == choice.size()) return;
    }
  };
  for (const auto& [name, spec] : family.signature().predicates()) r1_symbol(spec, true);
  for (const auto& [name, spec] : family.signature().functions()) r1_symbol(spec, false);

  static const LFormula dxy = parse_lformula("d(x, y)");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j) {
      ++report.instances;
      RandomVariable pd = bracket(dxy, {{"x", samples[i]}, {"y", samples[j]}}, family);
      if (distance(samples[i], samples[j], family) != expectation(family.space(), pd))
        fail(report.r2, "R2 samples " + std::to_string(i) + "," + std::to_string(j));
    }

  if (n > 20) throw Error("too many atoms to enumerate events");
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Event a = Event::none(n);
    for (std::size_t k = 0; k < n; ++k) a.member[k] = (mask >> k) & 1;
    for (const auto& x : samples)
      for (const auto& y : samples) {
        ++report.instances;
        Section c = glue(a, x, y);
        for (std::size_t k = 0; k < n; ++k) {
          const auto& d = family.structure(k).metric;
          if (a.member[k] ? sgn(d[x[k]][c[k]]) != 0 : sgn(d[y[k]][c[k]]) != 0)
            fail(report.r3, "R3 gluing at atom " + family.space().id(k));
        }
      }
  }
  return report;
}

Section inf_witness(const LFormula& f, const std::string& var, const SectionEnv& env, const RandomFamily& family,
                    const Rational& epsilon) {
  if (sgn(epsilon) < 0) throw Error("epsilon must be non-negative");
  family.signature().check(f);
  check_env(env, family);
  Section b(family.size(), 0);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const FiniteLStructure& m = family.structure(k);
    Valuation v = valuation_at(env, k);
    std::optional<Rational> best;
    for (std::size_t e = 0; e < m.size(); ++e) {
      v[var] = e;
      Rational x = evaluate(m, f, v);
      if (!best || x < *best) {
        best = x;
        b[k] = e;
      }
    }
  }
  return b;
}

std::vector<Rational> dirac_weighting(std::size_t num_atoms, std::size_t at) {
  if (at >= num_atoms) throw Error("Dirac point out of range");
  std::vector<Rational> w(num_atoms, Rational(0));
  w[at] = 1;
  return w;
}

LosResult los_check(const LFormula& f, const SectionEnv& env, const RandomFamily& family,
                    const std::vector<Rational>& weighting) {
  if (weighting.size() != family.size()) throw Error("weighting does not match the family");
  Rational total = 0;
  for (const auto& w : weighting) {
    if (sgn(w) < 0) throw Error("negative weight");
    total += w;
  }
  if (total != 1) throw Error("weights do not sum to 1");
  RandomVariable lhs = bracket(f, env, family);
  RandomVariable rhs = pointwise(f, env, family);
  LosResult out;
  for (std::size_t k = 0; k < family.size(); ++k) {
    out.lhs += weighting[k] * lhs.values[k];
    out.rhs += weighting[k] * rhs.values[k];
  }
  return out;
}

TypeMeasure type_measure(const SectionEnv& env, const RandomFamily& family, const std::vector<LFormula>& formulas) {
  std::vector<RandomVariable> values;
  for (const auto& f : formulas) values.push_back(pointwise(f, env, family));
  return joint_distribution(family.space(), values);
}

Rational pairing(const TypeMeasure& nu, std::size_t i) {
  Rational s = 0;
  for (const auto& [label, mass] : nu) s += mass * label.at(i);
  return s;
}

}  // namespace contlog
