#include "contlog/branching.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace contlog {

namespace {

using Term = std::pair<PlRef, Rational>;

PlForm combine(const PlForm& a, const PlForm& b, const Rational& scale_b) {
  PlForm out;
  out.constant = a.constant + scale_b * b.constant;
  out.terms.reserve(a.terms.size() + b.terms.size());
  auto i = a.terms.begin();
  auto j = b.terms.begin();
  while (i != a.terms.end() || j != b.terms.end()) {
    if (j == b.terms.end() || (i != a.terms.end() && i->first < j->first)) {
      out.terms.push_back(*i++);
    } else if (i == a.terms.end() || j->first < i->first) {
      out.terms.emplace_back(j->first, scale_b * j->second);
      ++j;
    } else {
      Rational c = i->second + scale_b * j->second;
      if (sgn(c) != 0) out.terms.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

PlForm operator+(const PlForm& a, const PlForm& b) { return combine(a, b, Rational(1)); }
PlForm operator-(const PlForm& a, const PlForm& b) { return combine(a, b, Rational(-1)); }

PlForm operator*(const PlForm& a, const Rational& q) {
  if (sgn(q) == 0) return PlForm{};
  PlForm out{a.constant * q, {}};
  out.terms.reserve(a.terms.size());
  for (const auto& [ref, c] : a.terms) out.terms.emplace_back(ref, c * q);
  return out;
}

bool PlGraph::form_less(const PlForm& a, const PlForm& b) {
  if (a.constant != b.constant) return a.constant < b.constant;
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].first != b.terms[i].first) return a.terms[i].first < b.terms[i].first;
    if (a.terms[i].second != b.terms[i].second) return a.terms[i].second < b.terms[i].second;
  }
  return false;
}

PlForm PlGraph::var(std::size_t i) const {
  assert(i < num_vars_);
  return PlForm{Rational(0), {{PlRef{PlRef::Kind::Var, static_cast<std::uint32_t>(i)}, Rational(1)}}};
}

PlForm PlGraph::constant(Rational q) { return PlForm{std::move(q), {}}; }

PlForm PlGraph::pos(const PlForm& input) {
  if (input.is_constant()) {
    if (fold_constants_) return constant(sgn(input.constant) > 0 ? input.constant : Rational(0));
  }
  // max(0, s*g) = s*max(0, g) for s > 0: normalise so the leading
  // coefficient has absolute value one.
  Rational scale = 1;
  if (!input.terms.empty()) {
    scale = input.terms.front().second;
    if (sgn(scale) < 0) scale = -scale;
  }
  PlForm key = scale == 1 ? input : input * Rational(1 / scale);
  auto it = index_.find(key);
  std::uint32_t k;
  if (it != index_.end()) {
    k = it->second;
  } else {
    k = static_cast<std::uint32_t>(pos_inputs_.size());
    pos_inputs_.push_back(key);
    index_.emplace(std::move(key), k);
  }
  return PlForm{Rational(0), {{PlRef{PlRef::Kind::Pos, k}, scale}}};
}

PlForm PlGraph::compile(const Formula& f, const std::vector<std::string>& vars) {
  std::unordered_map<Formula, PlForm, FormulaHash> memo;
  auto go = [&](auto&& self, const Formula& g) -> PlForm {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    PlForm out;
    switch (g.kind()) {
      case Formula::Kind::Zero:
        out = constant(0);
        break;
      case Formula::Kind::Atom: {
        auto pos_it = std::lower_bound(vars.begin(), vars.end(), g.name());
        if (pos_it == vars.end() || *pos_it != g.name()) throw Error("atom '" + g.name() + "' has no variable");
        out = var(static_cast<std::size_t>(pos_it - vars.begin()));
        break;
      }
      case Formula::Kind::Neg:
        out = constant(1) - self(self, g.arg());
        break;
      case Formula::Kind::Half:
        out = self(self, g.arg()) * Rational(1, 2);
        break;
      case Formula::Kind::Monus: {
        PlForm l = self(self, g.lhs());
        PlForm r = self(self, g.rhs());
        out = pos(l - r);
        break;
      }
    }
    memo.emplace(g, out);
    return out;
  };
  return go(go, f);
}

Rational PlGraph::eval(const PlForm& f, std::span<const Rational> point) const {
  std::vector<Rational> pos_values;
  pos_values.reserve(pos_inputs_.size());
  auto value_of = [&](const PlForm& form) {
    Rational v = form.constant;
    for (const auto& [ref, c] : form.terms) v += c * (ref.kind == PlRef::Kind::Var ? point[ref.index] : pos_values[ref.index]);
    return v;
  };
  std::size_t needed = 0;
  for (const auto& [ref, c] : f.terms)
    if (ref.kind == PlRef::Kind::Pos) needed = std::max<std::size_t>(needed, ref.index + 1);
  for (std::size_t k = 0; k < needed; ++k) {
    Rational v = value_of(pos_inputs_[k]);
    pos_values.push_back(sgn(v) > 0 ? v : Rational(0));
  }
  return value_of(f);
}

namespace {

class Brancher {
 public:
  Brancher(const PlGraph& graph, const std::vector<PlForm>& outputs, const std::vector<PlForm>& side_zero,
           const BranchOptions& options, const std::function<bool(const Cell&)>& visit)
      : graph_(graph), outputs_(outputs), options_(options), visit_(visit), values_(graph.num_pos()) {
    sides_at_.resize(graph.num_pos() + 1);
    for (const auto& s : side_zero) {
      std::size_t last = 0;  // slot 0 = before any decision, slot k+1 = after node k
      for (const auto& [ref, c] : s.terms)
        if (ref.kind == PlRef::Kind::Pos) last = std::max<std::size_t>(last, ref.index + 1);
      sides_at_[last].push_back(&s);
    }
  }

  void run() {
    std::vector<Rational> w(graph_.num_vars());
    std::size_t pushed = 0;
    if (!apply_sides(0, w, pushed)) return;
    dfs(0, w);
  }

 private:
  AffineExpr resolve(const PlForm& f) const {
    AffineExpr e(graph_.num_vars(), f.constant);
    for (const auto& [ref, c] : f.terms) {
      if (ref.kind == PlRef::Kind::Var) {
        e.coeffs[ref.index] += c;
      } else {
        const AffineExpr& v = values_[ref.index];
        e.constant += c * v.constant;
        for (std::size_t i = 0; i < e.coeffs.size(); ++i)
          if (sgn(v.coeffs[i]) != 0) e.coeffs[i] += c * v.coeffs[i];
      }
    }
    return e;
  }

  // Adds the side constraints that become affine once `slot` is reached.
  // Updates the witness; returns false if the cell becomes empty.
  bool apply_sides(std::size_t slot, std::vector<Rational>& w, std::size_t& pushed) {
    for (const PlForm* s : sides_at_[slot]) {
      AffineExpr h = resolve(*s);
      constraints_.push_back({std::move(h), Sense::LessEq});
      ++pushed;
      if (constraints_.back().holds_at(w)) continue;
      auto p = feasible_point(graph_.num_vars(), constraints_);
      if (!p) return false;
      w = std::move(*p);
    }
    return true;
  }

  struct Child {
    AffineExpr value;
    std::optional<LinearConstraint> constraint;
    std::vector<Rational> witness;
  };

  std::vector<Child> children(const AffineExpr& g, const std::vector<Rational>& w) {
    std::vector<Child> out;
    const std::size_t n = graph_.num_vars();
    auto zero_child = [&](std::vector<Rational> pt, bool constrained) {
      Child c{AffineExpr(n), std::nullopt, std::move(pt)};
      if (constrained) c.constraint = LinearConstraint{g, Sense::LessEq};
      out.push_back(std::move(c));
    };
    auto pos_child = [&](std::vector<Rational> pt, bool constrained) {
      Child c{g, std::nullopt, std::move(pt)};
      if (constrained) c.constraint = LinearConstraint{g, Sense::GreaterEq};
      out.push_back(std::move(c));
    };

    if (options_.pruning == Pruning::InfeasibleOnly) {
      int s = sgn(g.eval(w));
      if (s <= 0) {
        zero_child(w, true);
      } else if (auto lo = minimize(g, constraints_); lo && sgn(lo->value) <= 0) {
        zero_child(std::move(lo->point), true);
      }
      if (s >= 0) {
        pos_child(w, true);
      } else if (auto hi = maximize(g, constraints_); hi && sgn(hi->value) >= 0) {
        pos_child(std::move(hi->point), true);
      }
      return out;
    }

    if (g.is_constant()) {
      if (sgn(g.constant) > 0)
        pos_child(w, false);
      else
        zero_child(w, false);
      return out;
    }
    int s = sgn(g.eval(w));
    std::optional<LpSolution> lo, hi;
    if (s >= 0) {
      lo = minimize(g, constraints_);
      if (sgn(lo->value) >= 0) {
        pos_child(w, false);
        return out;
      }
    }
    if (s <= 0) {
      hi = maximize(g, constraints_);
      if (sgn(hi->value) <= 0) {
        zero_child(w, false);
        return out;
      }
    }
    // g changes sign strictly inside the cell.
    std::vector<Rational> below = s < 0 ? w : lo->point;
    std::vector<Rational> above = s > 0 ? w : hi->point;
    zero_child(std::move(below), true);
    pos_child(std::move(above), true);
    return out;
  }

  bool dfs(std::size_t k, const std::vector<Rational>& w) {
    if (k == graph_.num_pos()) {
      Cell cell;
      cell.constraints = constraints_;
      cell.outputs.reserve(outputs_.size());
      for (const auto& o : outputs_) cell.outputs.push_back(resolve(o));
      cell.witness = w;
      return visit_(cell);
    }
    AffineExpr g = resolve(graph_.pos_input(k));
    for (Child& child : children(g, w)) {
      std::size_t pushed = 0;
      if (child.constraint) {
        constraints_.push_back(std::move(*child.constraint));
        ++pushed;
      }
      values_[k] = std::move(child.value);
      bool keep_going = true;
      if (apply_sides(k + 1, child.witness, pushed)) keep_going = dfs(k + 1, child.witness);
      constraints_.resize(constraints_.size() - pushed);
      if (!keep_going) return false;
    }
    return true;
  }

  const PlGraph& graph_;
  const std::vector<PlForm>& outputs_;
  BranchOptions options_;
  const std::function<bool(const Cell&)>& visit_;
  std::vector<AffineExpr> values_;
  std::vector<LinearConstraint> constraints_;
  std::vector<std::vector<const PlForm*>> sides_at_;
};

}  // namespace

void enumerate_cells(const PlGraph& graph, const std::vector<PlForm>& outputs, const std::vector<PlForm>& side_zero,
                     const BranchOptions& options, const std::function<bool(const Cell&)>& visit) {
  Brancher(graph, outputs, side_zero, options, visit).run();
}

std::optional<PlMaximum> pl_maximize(const PlGraph& graph, const PlForm& objective,
                                     const std::vector<PlForm>& side_zero) {
  std::optional<Rational> best;
  std::vector<Cell> best_cells;
  enumerate_cells(graph, {objective}, side_zero, {}, [&](const Cell& cell) {
    auto r = maximize(cell.outputs[0], cell.constraints);
    if (!r) return true;  // cannot happen: the witness lies in the cell
    if (!best || *best < r->value) {
      best = r->value;
      best_cells.clear();
    }
    if (*best == r->value) best_cells.push_back(cell);
    return true;
  });
  if (!best) return std::nullopt;

  std::optional<std::vector<Rational>> least;
  for (const Cell& cell : best_cells) {
    std::vector<LinearConstraint> cs = cell.constraints;
    AffineExpr at_best = cell.outputs[0];
    at_best.constant -= *best;
    cs.push_back({std::move(at_best), Sense::GreaterEq});
    auto p = lexmin_point(graph.num_vars(), std::move(cs));
    if (p && (!least || *p < *least)) least = std::move(p);
  }
  return PlMaximum{*best, std::move(*least)};
}

std::optional<std::vector<Rational>> pl_exceeds(const PlGraph& graph, const PlForm& objective,
                                                const Rational& threshold, const std::vector<PlForm>& side_zero) {
  std::optional<std::vector<Rational>> found;
  enumerate_cells(graph, {objective}, side_zero, {}, [&](const Cell& cell) {
    if (cell.outputs[0].eval(cell.witness) > threshold) {
      found = cell.witness;
      return false;
    }
    auto r = maximize(cell.outputs[0], cell.constraints);
    if (r && r->value > threshold) {
      found = std::move(r->point);
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace contlog
