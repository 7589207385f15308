#include "contlog/semantics.hpp"

#include <algorithm>

#include "contlog/branching.hpp"

namespace contlog {

Rational eval(const Formula& f, const Assignment& v) {
  switch (f.kind()) {
    case Formula::Kind::Zero:
      return 0;
    case Formula::Kind::Atom: {
      auto it = v.find(f.name());
      if (it == v.end()) throw EvalError("unassigned atom '" + f.name() + "'");
      if (!in_unit_interval(it->second)) throw EvalError("value of '" + f.name() + "' is outside [0,1]");
      return it->second;
    }
    case Formula::Kind::Neg:
      return 1 - eval(f.arg(), v);
    case Formula::Kind::Half:
      return eval(f.arg(), v) / 2;
    case Formula::Kind::Monus:
      return monus(eval(f.lhs(), v), eval(f.rhs(), v));
  }
  return 0;
}

std::vector<std::string> collect_atoms(const std::vector<Formula>& fs) {
  std::set<std::string> all;
  for (const auto& f : fs) {
    auto a = atoms(f);
    all.insert(a.begin(), a.end());
  }
  return {all.begin(), all.end()};
}

namespace {

Assignment to_assignment(const std::vector<std::string>& vars, const std::vector<Rational>& point) {
  Assignment v;
  for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = point[i];
  return v;
}

std::vector<Rational> to_point(const std::vector<std::string>& vars, const Assignment& v) {
  std::vector<Rational> p;
  p.reserve(vars.size());
  for (const auto& name : vars) {
    auto it = v.find(name);
    if (it == v.end()) throw EvalError("unassigned atom '" + name + "'");
    p.push_back(it->second);
  }
  return p;
}

}  // namespace

bool BranchCell::contains(const Assignment& v) const {
  auto p = to_point(variables, v);
  return std::all_of(constraints.begin(), constraints.end(), [&](const LinearConstraint& c) { return c.holds_at(p); });
}

std::vector<BranchCell> enumerate_branches(const Formula& f) {
  std::vector<std::string> vars = collect_atoms({f});
  const std::size_t n = vars.size();
  PlGraph graph(n, /*fold_constants=*/false);
  PlForm value = graph.compile(f, vars);

  std::vector<LinearConstraint> box;
  for (std::size_t i = 0; i < n; ++i) {
    box.push_back({AffineExpr::variable(n, i), Sense::GreaterEq});
    AffineExpr upper = AffineExpr::variable(n, i);
    upper.constant = -1;
    box.push_back({std::move(upper), Sense::LessEq});
  }

  std::vector<BranchCell> cells;
  enumerate_cells(graph, {value}, {}, {Pruning::InfeasibleOnly}, [&](const Cell& c) {
    BranchCell cell{vars, box, c.outputs[0]};
    cell.constraints.insert(cell.constraints.end(), c.constraints.begin(), c.constraints.end());
    cells.push_back(std::move(cell));
    return true;
  });
  return cells;
}

SupResult sup_value(const Formula& f) {
  std::vector<std::string> vars = collect_atoms({f});
  PlGraph graph(vars.size());
  PlForm value = graph.compile(f, vars);
  auto m = pl_maximize(graph, value);
  // The box is never empty.
  return SupResult{m->value, to_assignment(vars, m->point)};
}

ValidityResult is_valid(const Formula& f) {
  std::vector<std::string> vars = collect_atoms({f});
  PlGraph graph(vars.size());
  PlForm value = graph.compile(f, vars);
  auto p = pl_exceeds(graph, value, Rational(0));
  if (!p) return {true, std::nullopt};
  return {false, to_assignment(vars, *p)};
}

std::optional<Assignment> is_satisfiable(const std::vector<Formula>& sigma) {
  std::vector<std::string> vars = collect_atoms(sigma);
  PlGraph graph(vars.size());
  std::vector<PlForm> sides;
  for (const auto& f : sigma) sides.push_back(graph.compile(f, vars));
  // Every model maximises the zero objective, so this is the least model.
  auto best = pl_maximize(graph, graph.compile(Formula::zero(), vars), sides);
  if (!best) return std::nullopt;
  return to_assignment(vars, best->point);
}

EntailmentResult entails_semantic(const std::vector<Formula>& sigma, const Formula& goal) {
  std::vector<Formula> all = sigma;
  all.push_back(goal);
  std::vector<std::string> vars = collect_atoms(all);
  PlGraph graph(vars.size());
  std::vector<PlForm> sides;
  for (const auto& f : sigma) sides.push_back(graph.compile(f, vars));
  PlForm target = graph.compile(goal, vars);
  auto p = pl_exceeds(graph, target, Rational(0), sides);
  if (!p) return {true, std::nullopt};
  return {false, to_assignment(vars, *p)};
}

Formula entailment_chain(const std::vector<Formula>& sigma, const Formula& goal, unsigned m) {
  Formula f = goal;
  for (const auto& psi : sigma) f = monus_chain(f, m, psi);
  return f;
}

std::optional<unsigned> entails_witness(const std::vector<Formula>& sigma, const Formula& goal, unsigned cap) {
  for (unsigned m = 0; m <= cap; ++m)
    if (is_valid(entailment_chain(sigma, goal, m)).valid) return m;
  return std::nullopt;
}

std::optional<unsigned> unsat_witness(const std::vector<Formula>& sigma, unsigned cap) {
  for (unsigned n = 0; n <= cap; ++n)
    if (is_valid(entailment_chain(sigma, one<Formula>(), n)).valid) return n;
  return std::nullopt;
}

}  // namespace contlog
