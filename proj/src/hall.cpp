#include "contlog/hall.hpp"

#include <deque>

namespace contlog {

void check_instance(const HallInstance& h) {
  for (const auto& item : h.items) {
    if (sgn(item.weight) < 0) throw Error("item '" + item.id + "' has negative weight");
    if (item.candidates.member.size() != h.space.size()) throw Error("event of item '" + item.id + "' has the wrong size");
  }
}

HallVerdict hall_condition(const HallInstance& h, std::size_t bound) {
  check_instance(h);
  const std::size_t s = h.items.size();
  if (s > bound) throw Error("too many items for the exhaustive Hall check");
  HallVerdict out;
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
    Rational w = 0;
    Event c = Event::none(h.space.size());
    std::vector<std::size_t> t;
    for (std::size_t x = 0; x < s; ++x)
      if ((mask >> x) & 1) {
        t.push_back(x);
        w += h.items[x].weight;
        c = join(c, h.items[x].candidates);
      }
    if (mu(h.space, c) < w && (!best || t < *best)) best = std::move(t);
  }
  if (best) {
    out.holds = false;
    out.violating = std::move(best);
  }
  return out;
}

namespace {

// Integral Edmonds-Karp on a dense capacity matrix.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t n) : n_(n), cap_(n * n, Integer(0)), flow_(n * n, Integer(0)) {}

  void add_edge(std::size_t u, std::size_t v, const Integer& c) { cap_[u * n_ + v] += c; }
  Integer flow(std::size_t u, std::size_t v) const { return flow_[u * n_ + v]; }

  Integer run(std::size_t source, std::size_t sink) {
    Integer total = 0;
    for (;;) {
      std::vector<std::size_t> parent(n_, n_);
      parent[source] = source;
      std::deque<std::size_t> queue{source};
      while (!queue.empty() && parent[sink] == n_) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n_; ++v)
          if (parent[v] == n_ && residual(u, v) > 0) {
            parent[v] = u;
            queue.push_back(v);
          }
      }
      if (parent[sink] == n_) return total;
      Integer push = -1;
      for (std::size_t v = sink; v != source; v = parent[v]) {
        Integer r = residual(parent[v], v);
        if (push < 0 || r < push) push = r;
      }
      for (std::size_t v = sink; v != source; v = parent[v]) {
        flow_[parent[v] * n_ + v] += push;
        flow_[v * n_ + parent[v]] -= push;
      }
      total += push;
    }
  }

 private:
  Integer residual(std::size_t u, std::size_t v) const { return cap_[u * n_ + v] - flow_[u * n_ + v]; }

  std::size_t n_;
  std::vector<Integer> cap_;
  std::vector<Integer> flow_;
};

}  // namespace

std::optional<Allocation> solve_allocation(const HallInstance& h) {
  check_instance(h);
  const std::size_t s = h.items.size(), n = h.space.size();
  Integer scale = 1;
  for (const auto& item : h.items) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), item.weight.get_den_mpz_t());
  for (const auto& w : h.space.weights()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), w.get_den_mpz_t());
  auto scaled = [&](const Rational& q) { return Integer(q.get_num() * (scale / q.get_den())); };

  // Nodes: 0 source, 1..s items, s+1..s+n atoms, s+n+1 sink.
  const std::size_t source = 0, sink = s + n + 1;
  MaxFlow net(s + n + 2);
  Integer demand = 0;
  for (std::size_t x = 0; x < s; ++x) {
    Integer w = scaled(h.items[x].weight);
    demand += w;
    net.add_edge(source, 1 + x, w);
    for (std::size_t k = 0; k < n; ++k)
      if (h.items[x].candidates.member[k]) net.add_edge(1 + x, 1 + s + k, scale);  // never binding
  }
  for (std::size_t k = 0; k < n; ++k) net.add_edge(1 + s + k, sink, scaled(h.space.weight(k)));
  if (net.run(source, sink) != demand) return std::nullopt;

  Allocation a;
  a.mass.assign(s, std::vector<Rational>(n, Rational(0)));
  for (std::size_t x = 0; x < s; ++x)
    for (std::size_t k = 0; k < n; ++k) {
      Integer f = net.flow(1 + x, 1 + s + k);
      if (f > 0) a.mass[x][k] = Rational(f, scale);
    }
  for (auto& row : a.mass)
    for (auto& q : row) q.canonicalize();
  return a;
}

bool verify_allocation(const HallInstance& h, const Allocation& a) {
  const std::size_t s = h.items.size(), n = h.space.size();
  if (a.mass.size() != s) return false;
  std::vector<Rational> used(n, Rational(0));
  for (std::size_t x = 0; x < s; ++x) {
    if (a.mass[x].size() != n) return false;
    Rational total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& m = a.mass[x][k];
      if (sgn(m) < 0) return false;
      if (sgn(m) > 0 && !h.items[x].candidates.member[k]) return false;
      total += m;
      used[k] += m;
    }
    if (total != h.items[x].weight) return false;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (used[k] > h.space.weight(k)) return false;
  return true;
}

std::vector<bool> realizable_as_events(const HallInstance& h, const Allocation& a) {
  std::vector<bool> out;
  for (std::size_t x = 0; x < a.mass.size(); ++x) {
    bool whole = true;
    for (std::size_t k = 0; k < h.space.size(); ++k)
      if (sgn(a.mass[x][k]) != 0 && a.mass[x][k] != h.space.weight(k)) whole = false;
    out.push_back(whole);
  }
  return out;
}

}  // namespace contlog
