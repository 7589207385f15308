#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "contlog/hall.hpp"
#include "contlog/lp.hpp"

using namespace contlog;
namespace ts = testing_support;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

Event ev(std::initializer_list<int> bits) {
  Event a;
  for (int b : bits) a.member.push_back(b != 0);
  return a;
}

HallInstance two_items(const Event& cx, const Event& cy) {
  return {FiniteProbSpace::uniform(2), {{"x", q(1, 2), cx}, {"y", q(1, 2), cy}}};
}

// Feasibility of the transportation polytope, decided by the LP directly.
bool lp_feasible(const HallInstance& h) {
  const std::size_t n = h.space.size();
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t x = 0; x < h.items.size(); ++x)
    for (std::size_t w = 0; w < n; ++w)
      if (h.items[x].candidates.member[w]) vars.emplace_back(x, w);
  std::vector<LinearConstraint> cons;
  for (std::size_t x = 0; x < h.items.size(); ++x) {
    AffineExpr e(vars.size(), -h.items[x].weight);
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].first == x) e.coeffs[v] = 1;
    cons.push_back({e, Sense::GreaterEq});
    cons.push_back({e, Sense::LessEq});
  }
  for (std::size_t w = 0; w < n; ++w) {
    AffineExpr e(vars.size(), -h.space.weight(w));
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].second == w) e.coeffs[v] = 1;
    cons.push_back({e, Sense::LessEq});
  }
  return feasible_point(vars.size(), cons).has_value();
}

HallInstance random_instance(std::mt19937_64& rng) {
  HallInstance h{ts::random_space(rng, 6), {}};
  std::size_t items = 1 + ts::pick(rng, 6);
  for (std::size_t x = 0; x < items; ++x)
    h.items.push_back({"x" + std::to_string(x), ts::random_unit(rng, 12) / Rational(1 + ts::pick(rng, 3)),
                       ts::random_event(rng, h.space.size())});
  return h;
}

}  // namespace

TEST_CASE("hall_condition examples") {
  HallInstance one{FiniteProbSpace::uniform(2), {{"x", q(1, 2), Event::all(2)}}};
  CHECK(hall_condition(one).holds);

  HallVerdict bad = hall_condition(two_items(ev({1, 0}), ev({1, 0})));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.violating);
  CHECK(*bad.violating == std::vector<std::size_t>{0, 1});

  CHECK(hall_condition(two_items(ev({1, 0}), ev({1, 1}))).holds);

  // {1} and {0, 1} both violate; [0, 1] is the lexicographically smaller list.
  HallInstance three{FiniteProbSpace::uniform(2),
                     {{"a", q(1, 2), ev({1, 0})}, {"b", q(3, 4), ev({0, 1})}, {"c", 0, ev({0, 0})}}};
  CHECK(hall_condition(three).violating == std::vector<std::size_t>{0, 1});
  three.items[0].weight = q(1, 4);
  CHECK(hall_condition(three).violating == std::vector<std::size_t>{1});

  HallInstance big{FiniteProbSpace::uniform(1), {}};
  for (int i = 0; i < 21; ++i) big.items.push_back({"i" + std::to_string(i), 0, Event::all(1)});
  CHECK_THROWS_AS(hall_condition(big), Error);
  CHECK(hall_condition(big, 21).holds);
}

TEST_CASE("solve_allocation examples") {
  HallInstance good = two_items(ev({1, 0}), ev({1, 1}));
  auto a = solve_allocation(good);
  REQUIRE(a);
  CHECK(a->mass[0][0] == q(1, 2));
  CHECK(a->mass[1][1] == q(1, 2));
  CHECK(verify_allocation(good, *a));

  CHECK_FALSE(solve_allocation(two_items(ev({1, 0}), ev({1, 0}))));

  FiniteProbSpace s({"w1", "w2", "w3"}, {q(1, 2), q(1, 3), q(1, 6)});
  HallInstance tight{s, {{"x", q(2, 3), ev({1, 0, 1})}}};
  auto t = solve_allocation(tight);
  REQUIRE(t);
  CHECK(t->mass[0] == std::vector<Rational>{q(1, 2), 0, q(1, 6)});
  CHECK(realizable_as_events(tight, *t) == std::vector<bool>{true});
}

TEST_CASE("verify_allocation rejects broken allocations") {
  HallInstance good = two_items(ev({1, 0}), ev({1, 1}));
  Allocation a = *solve_allocation(good);
  CHECK(verify_allocation(good, a));

  Allocation outside = a;
  outside.mass[0][0] = q(1, 4);
  outside.mass[0][1] = q(1, 4);
  CHECK_FALSE(verify_allocation(good, outside));

  Allocation short_weight = a;
  short_weight.mass[0][0] = q(1, 4);
  CHECK_FALSE(verify_allocation(good, short_weight));

  Allocation overfull{{{q(1, 2), 0}, {q(1, 2), 0}}};
  CHECK_FALSE(verify_allocation(two_items(ev({1, 0}), ev({1, 1})), overfull));

  Allocation negative{{{q(1, 2), 0}, {q(-1, 4), q(3, 4)}}};
  CHECK_FALSE(verify_allocation(good, negative));
  CHECK_FALSE(verify_allocation(good, Allocation{{{q(1, 2), 0}}}));
}

TEST_CASE("instances are validated") {
  CHECK_THROWS_AS(check_instance({FiniteProbSpace::uniform(2), {{"x", q(-1, 2), ev({1, 0})}}}), Error);
  CHECK_THROWS_AS(check_instance({FiniteProbSpace::uniform(2), {{"x", q(1, 2), ev({1})}}}), Error);
}

TEST_CASE("max-flow, Hall condition and the LP agree") {
  std::mt19937_64 rng(61);
  int feasible = 0;
  for (int i = 0; i < 300; ++i) {
    HallInstance h = random_instance(rng);
    HallVerdict v = hall_condition(h);
    auto a = solve_allocation(h);
    CHECK(a.has_value() == v.holds);
    CHECK(lp_feasible(h) == v.holds);
    if (a) {
      ++feasible;
      CHECK(verify_allocation(h, *a));
    } else {
      REQUIRE(v.violating);
      Event cover = Event::none(h.space.size());
      Rational w = 0;
      for (std::size_t x : *v.violating) {
        cover = join(cover, h.items[x].candidates);
        w += h.items[x].weight;
      }
      CHECK(mu(h.space, cover) < w);
    }
  }
  CHECK(feasible > 30);
  CHECK(feasible < 270);
}

TEST_CASE("total weight one fills every atom") {
  std::mt19937_64 rng(62);
  int tested = 0;
  while (tested < 50) {
    FiniteProbSpace sp = ts::random_space(rng, 5);
    // Split each atom's weight among random items, so the instance is feasible.
    std::size_t items = 1 + ts::pick(rng, 4);
    HallInstance h{sp, {}};
    for (std::size_t x = 0; x < items; ++x) h.items.push_back({"x" + std::to_string(x), 0, Event::none(sp.size())});
    for (std::size_t w = 0; w < sp.size(); ++w) {
      std::size_t x = ts::pick(rng, items);
      h.items[x].weight += sp.weight(w);
      h.items[x].candidates.member[w] = true;
      h.items[ts::pick(rng, items)].candidates.member[w] = true;
    }
    auto a = solve_allocation(h);
    REQUIRE(a);
    ++tested;
    for (std::size_t w = 0; w < sp.size(); ++w) {
      Rational used = 0;
      for (std::size_t x = 0; x < items; ++x) used += a->mass[x][w];
      CHECK(used == sp.weight(w));
    }
  }
}

TEST_CASE("event realizability labels") {
  HallInstance h{FiniteProbSpace::uniform(4), {{"x", q(1, 2), ev({1, 1, 0, 0})}, {"y", q(1, 8), ev({0, 0, 1, 0})}}};
  auto a = solve_allocation(h);
  REQUIRE(a);
  CHECK(realizable_as_events(h, *a) == std::vector<bool>{true, false});
}
