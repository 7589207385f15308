#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "contlog/rv.hpp"
#include "contlog/semantics.hpp"

using namespace contlog;
namespace ts = testing_support;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

RandomVariable rv(std::initializer_list<Rational> v) { return {std::vector<Rational>(v)}; }

Event ev(std::initializer_list<int> bits) {
  Event a;
  for (int b : bits) a.member.push_back(b != 0);
  return a;
}

Formula f(const char* text) { return parse_formula(text); }

// All terms of depth <= 3 over the given variables and 0.
std::vector<Formula> small_terms(const std::vector<std::string>& vars) {
  std::vector<Formula> level{Formula::zero()};
  for (const auto& v : vars) level.push_back(Formula::atom(v));
  std::vector<Formula> all = level;
  for (int d = 1; d <= 3; ++d) {
    std::vector<Formula> next;
    for (const auto& a : all) {
      if (a.depth() != static_cast<std::size_t>(d - 1)) continue;
      next.push_back(Formula::neg(a));
      next.push_back(Formula::half(a));
    }
    for (const auto& a : all)
      for (const auto& b : all)
        if (std::max(a.depth(), b.depth()) == static_cast<std::size_t>(d - 1) && (d < 3 || a.depth() + b.depth() <= 3))
          next.push_back(Formula::monus(a, b));
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

}  // namespace

TEST_CASE("spaces validate their weights") {
  CHECK_THROWS_AS(FiniteProbSpace({"a", "b"}, {q(1, 2), q(1, 3)}), Error);
  CHECK_THROWS_AS(FiniteProbSpace({"a", "b"}, {q(1, 1), q(0, 1)}), Error);
  CHECK_THROWS_AS(FiniteProbSpace({"a", "a"}, {q(1, 2), q(1, 2)}), Error);
  FiniteProbSpace u = FiniteProbSpace::uniform(3);
  CHECK(u.id(2) == "w3");
  CHECK(u.weight(0) == q(1, 3));
  CHECK(u.index_of("w2") == 1);
  CHECK_THROWS_AS(u.index_of("w9"), Error);
  CHECK_THROWS_AS(check_rv(u, rv({q(1, 2), q(3, 2), 0})), Error);
  CHECK_THROWS_AS(check_rv(u, rv({q(1, 2)})), Error);
}

TEST_CASE("rv_eval examples") {
  FiniteProbSpace u = FiniteProbSpace::uniform(2);
  RandomVariable x = rv({q(1, 2), 1}), y = rv({q(1, 4), q(3, 4)});
  CHECK(rv_eval(f("(x - y)"), {{"x", x}, {"y", y}}, u) == rv({q(1, 4), q(1, 4)}));
  CHECK(rv_eval(f("neg x"), {{"x", rv({0, 1})}}, u) == rv({1, 0}));
  RandomVariable h = rv_eval(f("half 1"), {}, u);
  CHECK(h == RandomVariable::constant(2, q(1, 2)));
  CHECK(expectation(u, h) == q(1, 2));
  CHECK_THROWS_AS(rv_eval(f("z"), {{"x", x}}, u), Error);
  CHECK_THROWS_AS(rv_eval(f("x"), {{"x", rv({0})}}, u), Error);
}

TEST_CASE("expectation and distance examples") {
  FiniteProbSpace u = FiniteProbSpace::uniform(2);
  RandomVariable x = rv({q(1, 2), 1}), y = rv({q(1, 4), q(3, 4)});
  CHECK(expectation(u, x) == q(3, 4));
  CHECK(l1_dist(u, x, x) == 0);
  CHECK(l1_dist(u, x, y) == q(1, 4));
  std::map<std::string, RandomVariable> env{{"x", x}, {"y", y}};
  CHECK(l1_dist(u, x, y) == expectation(u, rv_eval(f("(x - y)"), env, u)) + expectation(u, rv_eval(f("(y - x)"), env, u)));
  CHECK(expectation(u, x) == l1_dist(u, x, RandomVariable::constant(2, 0)));
}

TEST_CASE("RV axioms hold on finite spaces") {
  FiniteProbSpace s({"a", "b", "c"}, {q(1, 2), q(1, 3), q(1, 6)});
  RvAxiomReport r = check_rv_axioms(s, {rv({q(1, 3), q(2, 3), 1}), rv({0, q(1, 2), q(1, 7)})});
  CHECK(r.all_zero());
  CHECK(r.instances_checked > 0);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    FiniteProbSpace sp = ts::random_space(rng, 6);
    std::vector<RandomVariable> xs;
    for (int k = 0; k < 3; ++k) xs.push_back(ts::random_rv(rng, sp.size()));
    CHECK(check_rv_axioms(sp, xs).all_zero());
  }
  // RV4.5 example, evaluated directly.
  FiniteProbSpace u = FiniteProbSpace::uniform(2);
  CHECK(rv_eval(f("(half x - (x - half x))"), {{"x", rv({q(1, 3), q(2, 3)})}}, u) == RandomVariable::constant(2, 0));
}

TEST_CASE("linearity of expectation and the difference bounds") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    FiniteProbSpace sp = ts::random_space(rng, 6);
    RandomVariable a = ts::random_rv(rng, sp.size()), b = ts::random_rv(rng, sp.size());
    std::map<std::string, RandomVariable> env{{"x", a}, {"y", b}};
    RandomVariable d = rv_eval(f("(x - y)"), env, sp);
    CHECK(expectation(sp, a) - expectation(sp, b) <= expectation(sp, d));
    CHECK(expectation(sp, d) <= expectation(sp, a));
    bool summable = true;
    for (std::size_t k = 0; k < sp.size(); ++k) summable &= a.values[k] + b.values[k] <= 1;
    if (summable)
      CHECK(expectation(sp, rv_eval(f("(x (+) y)"), env, sp)) == expectation(sp, a) + expectation(sp, b));
  }
}

TEST_CASE("event algebra") {
  FiniteProbSpace s({"a", "b", "c"}, {q(1, 2), q(1, 4), q(1, 4)});
  Event a = ev({1, 0, 1}), b = ev({1, 1, 0});
  CHECK(meet(a, b) == ev({1, 0, 0}));
  CHECK(join(a, b) == ev({1, 1, 1}));
  CHECK(complement(a) == ev({0, 1, 0}));
  CHECK(mu(s, a) == q(3, 4));
  CHECK(mu(s, join(a, complement(a))) == 1);
  CHECK(embed(a) == rv({1, 0, 1}));
}

TEST_CASE("distance to the algebra of events") {
  FiniteProbSpace u = FiniteProbSpace::uniform(2);
  CHECK(dist_to_algebra(u, rv({1, 0})) == 0);
  CHECK(dist_to_algebra(u, rv({q(1, 2), 0})) == q(1, 4));
  CHECK(nearest_event(rv({q(1, 2), q(1, 3)})) == ev({1, 0}));

  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    FiniteProbSpace sp = ts::random_space(rng, 5);
    RandomVariable g = ts::random_rv(rng, sp.size());
    Rational best = -1;
    for (unsigned mask = 0; mask < (1u << sp.size()); ++mask) {
      Event e = Event::none(sp.size());
      for (std::size_t k = 0; k < sp.size(); ++k) e.member[k] = (mask >> k) & 1u;
      Rational d = l1_dist(sp, g, embed(e));
      if (best < 0 || d < best) best = d;
    }
    CHECK(dist_to_algebra(sp, g) == best);
    CHECK(l1_dist(sp, g, embed(nearest_event(g))) == best);
  }
}

TEST_CASE("arv defect examples") {
  ArvDefect a = arv_defect(FiniteProbSpace::uniform(2), RandomVariable::constant(2, 1));
  CHECK(a.value == 0);
  CHECK(arv_body(FiniteProbSpace::uniform(2), RandomVariable::constant(2, 1), a.witness) == 0);
  CHECK(arv_body(FiniteProbSpace::uniform(2), RandomVariable::constant(2, 1), rv({1, 0})) == 0);

  ArvDefect b = arv_defect(FiniteProbSpace::uniform(1), RandomVariable::constant(1, 1));
  CHECK(b.value == q(1, 4));
  CHECK(b.witness == rv({q(1, 4)}));

  ArvDefect c = arv_defect(FiniteProbSpace::uniform(2), rv({1, 0}));
  CHECK(c.value == q(1, 8));
  CHECK(arv_body(FiniteProbSpace::uniform(2), rv({1, 0}), c.witness) == c.value);
}

TEST_CASE("arv defect is a minimum") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 15; ++i) {
    FiniteProbSpace sp = ts::random_space(rng, 3);
    RandomVariable x = ts::random_rv(rng, sp.size());
    ArvDefect d = arv_defect(sp, x);
    CHECK(arv_body(sp, x, d.witness) == d.value);
    for (int k = 0; k < 200; ++k) CHECK(d.value <= arv_body(sp, x, ts::random_rv(rng, sp.size(), 16)));
  }
}

TEST_CASE("tau interpretation examples") {
  FiniteProbSpace u = FiniteProbSpace::uniform(2);
  TauPhiResult zero = tau_phi_interpretation(u, RandomVariable::constant(2, 0), 3, Event::all(2));
  CHECK(zero.value == 0);
  CHECK(zero.integral == 0);

  TauPhiResult half = tau_phi_interpretation(u, rv({q(1, 4), q(3, 4)}), 4, Event::all(2));
  CHECK(half.integral == q(1, 2));
  CHECK(Rational(abs(half.value - half.integral)) < q(1, 16));

  TauPhiResult ind = tau_phi_interpretation(u, rv({1, 0}), 2, ev({1, 0}));
  CHECK(ind.integral == q(1, 2));
  CHECK(Rational(abs(ind.value - ind.integral)) < q(1, 4));

  CHECK_THROWS_AS(tau_phi_interpretation(u, rv({1, 0}), 0, ev({1, 0})), Error);
}

TEST_CASE("tau interpretation matches the direct sum and the bound") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 60; ++i) {
    FiniteProbSpace sp = ts::random_space(rng, 6);
    RandomVariable g = ts::random_rv(rng, sp.size(), 16);
    Event c = ts::random_event(rng, sp.size());
    for (unsigned n = 1; n <= 6; ++n) {
      // Sum over k of 2^-n mu(c and {g > r}), r the midpoints.
      Rational direct = 0;
      for (unsigned k = 0; k < (1u << n); ++k) {
        Rational r(2 * k + 1, 1u << (n + 1));
        r.canonicalize();
        for (std::size_t w = 0; w < sp.size(); ++w)
          if (c.member[w] && g.values[w] > r) direct += dyadic(n) * sp.weight(w);
      }
      TauPhiResult t = tau_phi_interpretation(sp, g, n, c);
      CHECK(t.value == direct);
      CHECK(Rational(abs(t.value - t.integral)) < dyadic(n));
      CHECK(Rational(abs(t.value - t.integral)) <= dyadic(n + 1));
      CHECK(t.coincides);
      CHECK(t.increasing);
    }
  }
}

TEST_CASE("tau recursion on arbitrary level events") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 200; ++i) {
    std::size_t atoms = 1 + ts::pick(rng, 5);
    unsigned n = 1 + static_cast<unsigned>(ts::pick(rng, 4));
    std::vector<Event> levels;
    for (unsigned k = 0; k <= (1u << n); ++k) levels.push_back(ts::random_event(rng, atoms));
    std::vector<Event> tau = tau_sequence(levels, n, atoms);
    REQUIRE(tau.size() == (1u << n) + 1);
    CHECK(tau.front() == Event::none(atoms));
    CHECK(tau.back() == Event::all(atoms));
    CHECK_THROWS_AS(tau_sequence({Event::none(atoms)}, n, atoms), Error);
    for (std::size_t k = 0; k + 1 < tau.size(); ++k) CHECK(meet(tau[k], tau[k + 1]) == tau[k]);

    // Increasing input comes back unchanged.
    std::vector<Event> inc{Event::none(atoms)};
    for (unsigned k = 1; k <= (1u << n); ++k) inc.push_back(join(inc.back(), ts::random_event(rng, atoms)));
    std::vector<Event> same = tau_sequence(inc, n, atoms);
    for (unsigned k = 1; k < (1u << n); ++k) CHECK(same[k] == inc[k]);
  }
}

TEST_CASE("square approximants") {
  for (unsigned n = 1; n <= 4; ++n) {
    Formula t = square_approximant(n);
    CHECK(atoms(t) == std::set<std::string>{"x"});
    Rational tol = dyadic(2 * n + 2);
    for (int k = 0; k <= 64; ++k) {
      Rational v = q(k, 64);
      Rational err = abs(eval(t, {{"x", v}}) - v * v);
      CHECK(err <= tol);
    }
    std::mt19937_64 rng(47 + n);
    for (int i = 0; i < 20; ++i) {
      FiniteProbSpace sp = ts::random_space(rng, 6);
      RandomVariable g = ts::random_rv(rng, sp.size(), 16);
      RandomVariable a = rv_eval(t, {{"x", g}}, sp);
      for (std::size_t w = 0; w < sp.size(); ++w)
        CHECK(Rational(abs(a.values[w] - g.values[w] * g.values[w])) <= tol);
    }
  }
  CHECK(eval(square_approximant(2), {{"x", q(1, 4)}}) == q(1, 16));
}

TEST_CASE("joint distributions and qf types") {
  FiniteProbSpace u2 = FiniteProbSpace::uniform(2), u4 = FiniteProbSpace::uniform(4);
  RandomVariable fv = rv({0, 1}), gv = rv({1, 0});
  JointDistribution j = joint_distribution(u2, {fv, gv});
  CHECK(j.size() == 2);
  CHECK(j.at({Rational(0), Rational(1)}) == q(1, 2));
  CHECK(qf_type_equal(u2, {fv, gv}, u2, {gv, fv}));
  CHECK(qf_type_equal(u2, {fv}, u4, {rv({0, 1, 0, 1})}));
  CHECK_FALSE(qf_type_equal(u2, {fv}, u2, {rv({0, 0})}));
  CHECK_THROWS_AS(qf_type_equal(u2, {fv}, u2, {fv, gv}), Error);
}

TEST_CASE("equal qf types give equal expectations of terms") {
  std::vector<Formula> terms = small_terms({"x", "y"});
  CHECK(terms.size() > 1000);
  std::mt19937_64 rng(48);
  auto expectations = [&](const FiniteProbSpace& sp, const RandomVariable& a, const RandomVariable& b) {
    std::vector<Rational> out;
    for (const auto& t : terms) out.push_back(expectation(sp, rv_eval(t, {{"x", a}, {"y", b}}, sp)));
    return out;
  };
  for (int i = 0; i < 4; ++i) {
    // The same tuple, with atoms permuted and each split in two halves.
    FiniteProbSpace sp = ts::random_space(rng, 4);
    RandomVariable a = ts::random_rv(rng, sp.size(), 4), b = ts::random_rv(rng, sp.size(), 4);
    std::vector<std::string> ids;
    std::vector<Rational> w;
    RandomVariable a2, b2;
    for (std::size_t k = sp.size(); k-- > 0;)
      for (int half = 0; half < 2; ++half) {
        ids.push_back("v" + std::to_string(ids.size()));
        w.push_back(sp.weight(k) / 2);
        a2.values.push_back(a.values[k]);
        b2.values.push_back(b.values[k]);
      }
    FiniteProbSpace sp2(ids, w);
    REQUIRE(qf_type_equal(sp, {a, b}, sp2, {a2, b2}));
    CHECK(expectations(sp, a, b) == expectations(sp2, a2, b2));
  }
  // Different distributions on the values {0, 1/2, 1} are told apart.
  std::vector<Formula> unary = small_terms({"x"});
  FiniteProbSpace u3 = FiniteProbSpace::uniform(3);
  std::vector<Rational> vals{0, q(1, 2), 1};
  for (int i = 0; i < 27; ++i)
    for (int j = 0; j < 27; ++j) {
      RandomVariable a = rv({vals[i % 3], vals[i / 3 % 3], vals[i / 9]});
      RandomVariable b = rv({vals[j % 3], vals[j / 3 % 3], vals[j / 9]});
      bool same = qf_type_equal(u3, {a}, u3, {b});
      bool all_equal = true;
      for (const auto& t : unary)
        all_equal &= expectation(u3, rv_eval(t, {{"x", a}}, u3)) == expectation(u3, rv_eval(t, {{"x", b}}, u3));
      CHECK(same == all_equal);
    }
}

TEST_CASE("conditional expectation examples") {
  FiniteProbSpace s({"a", "b", "c"}, {q(1, 2), q(1, 4), q(1, 4)});
  RandomVariable x = rv({q(1, 4), q(3, 4), 1});
  CHECK(cond_expectation(s, x, {ev({1, 0, 0}), ev({0, 1, 0}), ev({0, 0, 1})}) == x);
  CHECK(cond_expectation(s, x, {Event::all(3)}) == RandomVariable::constant(3, expectation(s, x)));
  CHECK(cond_expectation(s, x, {ev({1, 0, 0}), ev({0, 1, 1})}) == rv({q(1, 4), q(7, 8), q(7, 8)}));
  CHECK_THROWS_AS(cond_expectation(s, x, {ev({1, 0, 0}), ev({1, 1, 1})}), Error);
  CHECK_THROWS_AS(cond_expectation(s, x, {ev({1, 0, 0})}), Error);

  std::mt19937_64 rng(49);
  for (int i = 0; i < 50; ++i) {
    FiniteProbSpace sp = ts::random_space(rng, 6);
    RandomVariable g = ts::random_rv(rng, sp.size());
    std::vector<Event> blocks = generated_partition(sp.size(), {ts::random_rv(rng, sp.size(), 2)});
    RandomVariable c = cond_expectation(sp, g, blocks);
    CHECK(expectation(sp, c) == expectation(sp, g));
    for (const auto& blk : blocks)
      for (std::size_t k = 0; k < sp.size(); ++k)
        for (std::size_t l = 0; l < sp.size(); ++l)
          if (blk.member[k] && blk.member[l]) CHECK(c.values[k] == c.values[l]);
  }
}

TEST_CASE("generated partitions") {
  auto none = generated_partition(3, {});
  REQUIRE(none.size() == 1);
  CHECK(none[0] == Event::all(3));
  CHECK(generated_partition(3, {rv({0, q(1, 2), 1})}).size() == 3);
  auto p = generated_partition(3, {rv({0, 0, 1}), rv({0, 1, 1})});
  CHECK(p == std::vector<Event>{ev({1, 0, 0}), ev({0, 1, 0}), ev({0, 0, 1})});
  auto blocks = generated_partition(4, {rv({1, 0, 1, 0})});
  CHECK(blocks == std::vector<Event>{ev({1, 0, 1, 0}), ev({0, 1, 0, 1})});
}
