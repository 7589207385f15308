#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>

#include "../support/generators.hpp"
#include "contlog/semantics.hpp"

using namespace contlog;
namespace ts = testing_support;

namespace {

Formula f(const char* text) { return parse_formula(text); }

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// All assignments of `names` on the grid k / den.
template <class Fn>
void for_grid(const std::vector<std::string>& names, long den, Fn fn) {
  std::vector<long> idx(names.size(), 0);
  for (;;) {
    Assignment v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = q(idx[i], den);
    fn(v);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] > den) idx[k++] = 0;
    if (k == idx.size()) return;
  }
}

}  // namespace

TEST_CASE("eval examples") {
  CHECK(eval(f("neg p"), {{"p", q(3, 10)}}) == q(7, 10));
  CHECK(eval(f("(p - q)"), {{"p", q(7, 10)}, {"q", q(3, 10)}}) == q(2, 5));
  Formula remark = monus_chain(one<Formula>(), 2, monus_chain(one<Formula>(), 2, f("p")));
  CHECK(eval(remark, {{"p", q(1, 4)}}) == 0);
  CHECK(eval(remark, {{"p", q(1, 8)}}) == 0);
  CHECK(eval(remark, {{"p", q(1, 2)}}) == 1);
  CHECK_THROWS_AS(eval(f("p"), {}), EvalError);
  CHECK_THROWS_AS(eval(f("p"), {{"p", q(3, 2)}}), EvalError);
}

TEST_CASE("enumerate_branches examples") {
  auto atom = enumerate_branches(f("p"));
  REQUIRE(atom.size() == 1);
  CHECK(atom[0].value == AffineExpr::variable(1, 0));

  auto mq = enumerate_branches(f("(p - q)"));
  REQUIRE(mq.size() == 2);
  int zero_cells = 0;
  for (const auto& c : mq) {
    if (c.value.is_constant()) {
      CHECK(c.value.constant == 0);
      ++zero_cells;
    } else {
      CHECK(c.value == AffineExpr::variable(2, 0) - AffineExpr::variable(2, 1));
    }
  }
  CHECK(zero_cells == 1);

  auto pp = enumerate_branches(f("(p - p)"));
  REQUIRE(pp.size() == 2);
  for (const auto& c : pp) CHECK(c.value == AffineExpr(1));
}

// A constraint scaled to integer coefficients over grid indices k_i, where
// the point is k / den; the sign of the scaled value is the sign of expr.
struct GridConstraint {
  std::int64_t constant;
  std::vector<std::int64_t> coeffs;
  Sense sense;

  GridConstraint(const LinearConstraint& c, long den) : sense(c.sense) {
    Integer l = 1;
    mpz_class dc = c.expr.constant.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dc.get_mpz_t());
    for (const auto& a : c.expr.coeffs) {
      mpz_class d = a.get_den() * den;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    Rational s = Rational(l);
    constant = Rational(c.expr.constant * s).get_num().get_si();
    for (const auto& a : c.expr.coeffs) coeffs.push_back(Rational(a * s / den).get_num().get_si());
  }

  bool holds(const std::vector<long>& k) const {
    std::int64_t v = constant;
    for (std::size_t i = 0; i < k.size(); ++i) v += coeffs[i] * k[i];
    return sense == Sense::GreaterEq ? v >= 0 : v <= 0;
  }
};

TEST_CASE("branch cells agree with eval on the grid") {
  std::mt19937_64 rng(21);
  auto run = [&](const std::vector<std::string>& names, int count, long den) {
    for (int i = 0; i < count;) {
      Formula g = ts::random_formula(rng, names, 5);
      if (count_monus(g) > 8) continue;
      ++i;
      auto cells = enumerate_branches(g);
      std::vector<std::string> vars = collect_atoms({g});
      std::vector<std::vector<GridConstraint>> scaled;
      for (const auto& c : cells) {
        CHECK(c.variables == vars);
        scaled.emplace_back();
        for (const auto& k : c.constraints) scaled.back().emplace_back(k, den);
      }
      std::vector<long> idx(vars.size(), 0);
      for (;;) {
        Assignment v;
        std::vector<Rational> pt;
        for (std::size_t j = 0; j < vars.size(); ++j) {
          pt.push_back(q(idx[j], den));
          v[vars[j]] = pt.back();
        }
        Rational expected = eval(g, v);
        bool covered = false;
        for (std::size_t c = 0; c < cells.size(); ++c)
          if (std::all_of(scaled[c].begin(), scaled[c].end(), [&](const GridConstraint& k) { return k.holds(idx); })) {
            covered = true;
            if (cells[c].value.eval(pt) != expected) FAIL("cell value differs from eval on " << print(g));
          }
        if (!covered) FAIL("grid point not covered for " << print(g));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] > den) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  };
  run({"p", "q", "r"}, 40, 16);
  run({"p", "q", "r", "s"}, 4, 16);
  auto cells = enumerate_branches(f("(p - q)"));
  Assignment v{{"p", q(1, 4)}, {"q", q(1, 2)}};
  CHECK(cells[0].contains(v) != cells[1].contains(v));
}

TEST_CASE("sup_value examples") {
  SupResult a = sup_value(f("p"));
  CHECK(a.value == 1);
  CHECK(a.witness.at("p") == 1);
  CHECK(sup_value(f("(p - p)")).value == 0);
  SupResult b = sup_value(f("|p - 2^-1|"));
  CHECK(b.value == q(1, 2));
  CHECK(b.witness.at("p") == 0);  // lexicographically least of {0, 1}
  CHECK(sup_value(f("0")).value == 0);
  CHECK(sup_value(f("1")).value == 1);
}

TEST_CASE("sup_value against a dense grid") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 40;) {
    Formula g = ts::random_formula(rng, {"p", "q"}, 5);
    if (count_monus(g) > 8) continue;
    ++i;
    SupResult s = sup_value(g);
    Assignment w = s.witness;
    CHECK(eval(g, w) == s.value);
    Rational grid_max = 0;
    for_grid(collect_atoms({g}), 32, [&](const Assignment& v) { grid_max = rmax(grid_max, eval(g, v)); });
    CHECK(grid_max <= s.value);
  }
}

TEST_CASE("is_valid examples") {
  CHECK(is_valid(f("((p - q) - p)")).valid);
  ValidityResult p = is_valid(f("p"));
  CHECK_FALSE(p.valid);
  REQUIRE(p.counterexample);
  CHECK(p.counterexample->at("p") == 1);
  CHECK(is_valid(f("(half p - (p - half p))")).valid);
  CHECK(is_valid(f("0")).valid);
  CHECK_FALSE(is_valid(f("1")).valid);
}

TEST_CASE("is_satisfiable examples") {
  auto a = is_satisfiable({f("p")});
  REQUIRE(a);
  CHECK(a->at("p") == 0);
  CHECK_FALSE(is_satisfiable({f("neg (p - p)")}));
  auto b = is_satisfiable({f("(p - q)"), f("(q - p)")});
  REQUIRE(b);
  CHECK(b->at("p") == b->at("q"));
  CHECK(b->at("p") == 0);
  CHECK_FALSE(is_satisfiable({f("p"), f("neg p")}));
  CHECK(is_satisfiable({}).has_value());
}

TEST_CASE("entails_semantic examples") {
  CHECK(entails_semantic({f("p")}, f("half p")).holds);
  EntailmentResult r = entails_semantic({f("((1 - (1 - p)) - (1 - p))")}, f("p"));
  CHECK_FALSE(r.holds);
  REQUIRE(r.countermodel);
  CHECK(r.countermodel->at("p") == q(1, 2));
  CHECK(eval(f("p"), *r.countermodel) > 0);
  CHECK(entails_semantic({}, f("(((r - p) - (r - q)) - (q - p))")).holds);
  // No models, so everything follows.
  CHECK(entails_semantic({f("1")}, f("p")).holds);
}

TEST_CASE("entails_witness and unsat_witness examples") {
  CHECK(entails_witness({f("p")}, f("half p"), 8) == 1u);
  CHECK(entails_witness({}, f("(p - p)"), 8) == 0u);
  CHECK(entails_witness({f("p")}, f("0"), 8) == 0u);
  CHECK(unsat_witness({f("neg (p - p)")}, 4) == 1u);
  CHECK_FALSE(unsat_witness({f("p")}, 4));
  CHECK(unsat_witness({f("p"), f("neg p")}, 4) == 1u);
  CHECK(unsat_witness({f("half p"), f("neg p")}, 4) == 2u);
  CHECK(entailment_chain({f("p"), f("q")}, f("r"), 2) == f("((((r - p) - p) - q) - q)"));
}

TEST_CASE("decider agrees with grid sampling") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 150;) {
    Formula g = ts::random_formula(rng, {"p", "q", "r"}, 5);
    if (count_monus(g) > 10) continue;
    ++i;
    ValidityResult v = is_valid(g);
    if (v.valid) {
      for_grid(collect_atoms({g}), 8, [&](const Assignment& a) {
        if (eval(g, a) != 0) FAIL("grid refutes " << print(g));
      });
    } else {
      REQUIRE(v.counterexample);
      CHECK(eval(g, *v.counterexample) > 0);
    }
  }
}

TEST_CASE("witness soundness and monotonicity") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 40; ++i) {
    std::vector<Formula> sigma{ts::random_formula(rng, {"p", "q"}, 2)};
    Formula goal = ts::random_formula(rng, {"p", "q"}, 2);
    auto m = entails_witness(sigma, goal, 6);
    if (m) {
      CHECK(entails_semantic(sigma, goal).holds);
      for (unsigned k = *m; k <= 6; ++k) CHECK(is_valid(entailment_chain(sigma, goal, k)).valid);
    }
    if (!entails_semantic(sigma, goal).holds) CHECK_FALSE(m);
  }
}

static std::size_t occurrences(const Formula& g, const std::string& name) {
  switch (g.kind()) {
    case Formula::Kind::Zero:
      return 0;
    case Formula::Kind::Atom:
      return g.name() == name ? 1 : 0;
    case Formula::Kind::Neg:
    case Formula::Kind::Half:
      return occurrences(g.arg(), name);
    case Formula::Kind::Monus:
      return occurrences(g.lhs(), name) + occurrences(g.rhs(), name);
  }
  return 0;
}

// Each connective is 1-Lipschitz per argument, so moving one atom moves the
// value by at most its number of occurrences times the step.
TEST_CASE("eval stays in the unit interval and is Lipschitz per occurrence") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 300; ++i) {
    Formula g = ts::random_formula(rng, {"p", "q"}, 5);
    Assignment v{{"p", ts::random_unit(rng)}, {"q", ts::random_unit(rng)}};
    Assignment w{{"p", ts::random_unit(rng)}, {"q", v.at("q")}};
    Rational a = eval(g, v), b = eval(g, w);
    CHECK(in_unit_interval(a));
    CHECK(Rational(abs(a - b)) <= Rational(abs(v.at("p") - w.at("p"))) * Rational(occurrences(g, "p")));
  }
  Formula twice = parse_formula("(p (+) p)");
  CHECK(eval(twice, {{"p", q(1, 4)}}) - eval(twice, {{"p", q(0, 1)}}) == q(1, 2));
}
