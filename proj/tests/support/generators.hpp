#pragma once

#include <random>
#include <string>
#include <vector>

#include "contlog/randomisation.hpp"
#include "contlog/rv.hpp"
#include "contlog/syntax.hpp"

namespace testing_support {

using contlog::Formula;
using contlog::Rational;

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

/// Random core formula over `atoms` with depth <= depth.
inline Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms, unsigned depth) {
  if (depth == 0 || pick(rng, 4) == 0) {
    if (pick(rng, 8) == 0) return Formula::zero();
    return Formula::atom(atoms[pick(rng, atoms.size())]);
  }
  switch (pick(rng, 5)) {
    case 0:
      return Formula::neg(random_formula(rng, atoms, depth - 1));
    case 1:
      return Formula::half(random_formula(rng, atoms, depth - 1));
    default:
      return Formula::monus(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

/// Rational in [0,1] with denominator <= max_den.
inline Rational random_unit(std::mt19937_64& rng, unsigned max_den = 8) {
  unsigned q = 1 + static_cast<unsigned>(pick(rng, max_den));
  unsigned p = static_cast<unsigned>(pick(rng, q + 1));
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline contlog::FiniteProbSpace random_space(std::mt19937_64& rng, std::size_t max_atoms) {
  std::size_t n = 1 + pick(rng, max_atoms);
  std::vector<unsigned> raw;
  unsigned total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    raw.push_back(1 + static_cast<unsigned>(pick(rng, 9)));
    total += raw.back();
  }
  std::vector<std::string> ids;
  std::vector<Rational> w;
  for (std::size_t k = 0; k < n; ++k) {
    ids.push_back("w" + std::to_string(k + 1));
    Rational r(raw[k], total);
    r.canonicalize();
    w.push_back(r);
  }
  return contlog::FiniteProbSpace(ids, w);
}

inline contlog::RandomVariable random_rv(std::mt19937_64& rng, std::size_t n, unsigned max_den = 8) {
  contlog::RandomVariable x;
  for (std::size_t k = 0; k < n; ++k) x.values.push_back(random_unit(rng, max_den));
  return x;
}

inline contlog::Event random_event(std::mt19937_64& rng, std::size_t n) {
  contlog::Event a = contlog::Event::none(n);
  for (std::size_t k = 0; k < n; ++k) a.member[k] = pick(rng, 2) == 1;
  return a;
}

/// Metric on m points: d(i,j) = distinct positive values in [1/2, 1], which
/// always satisfies the triangle inequality.
inline std::vector<std::vector<Rational>> random_metric(std::mt19937_64& rng, std::size_t m) {
  std::vector<std::vector<Rational>> d(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Rational r(4 + pick(rng, 5), 8);
      r.canonicalize();
      d[i][j] = d[j][i] = r;
    }
  return d;
}

/// Random family over one unary predicate P with Lipschitz constant 1. P
/// takes values in [1/4, 3/4] and distinct points are at distance >= 1/2,
/// so the modulus always holds.
inline contlog::RandomFamily random_family(std::mt19937_64& rng, std::size_t max_atoms, std::size_t max_universe) {
  contlog::FiniteProbSpace space = random_space(rng, max_atoms);
  contlog::Signature sig;
  sig.add_predicate({"P", 1, {Rational(1)}});
  std::vector<contlog::FiniteLStructure> ms;
  for (std::size_t k = 0; k < space.size(); ++k) {
    contlog::FiniteLStructure m;
    std::size_t u = 1 + pick(rng, max_universe);
    for (std::size_t e = 0; e < u; ++e) m.universe.push_back("e" + std::to_string(e));
    m.metric = random_metric(rng, u);
    std::vector<Rational> p;
    for (std::size_t e = 0; e < u; ++e) {
      Rational r(2 + pick(rng, 5), 8);
      r.canonicalize();
      p.push_back(r);
    }
    m.predicates["P"] = p;
    ms.push_back(std::move(m));
  }
  return contlog::RandomFamily(space, sig, ms);
}

inline contlog::Section random_section(std::mt19937_64& rng, const contlog::RandomFamily& fam) {
  contlog::Section s;
  for (std::size_t k = 0; k < fam.size(); ++k) s.push_back(pick(rng, fam.structure(k).size()));
  return s;
}

}  // namespace testing_support
