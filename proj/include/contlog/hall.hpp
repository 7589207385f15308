#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "contlog/rv.hpp"

namespace contlog {

struct HallItem {
  std::string id;
  Rational weight;  // w_x >= 0
  Event candidates; // C_x
};

struct HallInstance {
  FiniteProbSpace space;
  std::vector<HallItem> items;
};

/// Throws Error on negative weights or events of the wrong size.
void check_instance(const HallInstance& h);

/// mass[x][w]: the part of atom w allocated to item x.
struct Allocation {
  std::vector<std::vector<Rational>> mass;
};

struct HallVerdict {
  bool holds = true;
  /// Item indices of the violating subset whose sorted index list is
  /// lexicographically least.
  std::optional<std::vector<std::size_t>> violating;
};

/// Checks mu(C_T) >= w_T for every subset T. Throws Error when there are
/// more than `bound` items.
HallVerdict hall_condition(const HallInstance& h, std::size_t bound = 20);

/// Exact max-flow allocation; nullopt when the weights cannot all be placed.
std::optional<Allocation> solve_allocation(const HallInstance& h);

bool verify_allocation(const HallInstance& h, const Allocation& a);

/// Items whose allocated mass is a union of whole atoms, so that the event
/// D_x = {w : mass[x][w] > 0} satisfies mu(D_x) = w_x exactly.
std::vector<bool> realizable_as_events(const HallInstance& h, const Allocation& a);

}  // namespace contlog
