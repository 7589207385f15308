#include "contlog/lp.hpp"

#include <cassert>

namespace contlog {

AffineExpr AffineExpr::variable(std::size_t num_vars, std::size_t i) {
  AffineExpr e(num_vars);
  e.coeffs[i] = 1;
  return e;
}

bool AffineExpr::is_constant() const {
  for (const auto& c : coeffs)
    if (sgn(c) != 0) return false;
  return true;
}

Rational AffineExpr::eval(std::span<const Rational> point) const {
  assert(point.size() == coeffs.size());
  Rational v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) v += coeffs[i] * point[i];
  return v;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  assert(o.coeffs.size() == coeffs.size());
  constant += o.constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) {
  assert(o.coeffs.size() == coeffs.size());
  constant -= o.constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

AffineExpr& AffineExpr::operator*=(const Rational& q) {
  constant *= q;
  for (auto& c : coeffs) c *= q;
  return *this;
}

bool LinearConstraint::holds_at(std::span<const Rational> point) const {
  int s = sgn(expr.eval(point));
  return sense == Sense::GreaterEq ? s >= 0 : s <= 0;
}

namespace {

// Simplex on the dual of
//   max c.x  s.t.  A x <= b,  0 <= x <= 1,
// namely  min b.y  s.t.  A^T y = c,  y >= 0.
// The dual is always feasible thanks to the box rows, and its initial basis
// consists of the box rows (one per variable). An unbounded dual means an
// empty primal region. The primal optimum is read off the reduced costs of
// the upper-bound rows. Bland's rule prevents cycling.
class DualSimplex {
 public:
  DualSimplex(const AffineExpr& objective, std::span<const LinearConstraint> constraints)
      : n_(objective.num_vars()), m_user_(constraints.size()), cols_(m_user_ + 2 * n_) {
    rows_a_.reserve(cols_);
    b_.reserve(cols_);
    for (const auto& c : constraints) {
      assert(c.expr.num_vars() == n_);
      std::vector<Rational> a(n_);
      if (c.sense == Sense::GreaterEq) {
        for (std::size_t j = 0; j < n_; ++j) a[j] = -c.expr.coeffs[j];
        b_.push_back(c.expr.constant);
      } else {
        a = c.expr.coeffs;
        b_.push_back(-c.expr.constant);
      }
      rows_a_.push_back(std::move(a));
    }
    for (std::size_t j = 0; j < n_; ++j) {  // x_j <= 1
      std::vector<Rational> a(n_);
      a[j] = 1;
      rows_a_.push_back(std::move(a));
      b_.push_back(1);
    }
    for (std::size_t j = 0; j < n_; ++j) {  // -x_j <= 0
      std::vector<Rational> a(n_);
      a[j] = -1;
      rows_a_.push_back(std::move(a));
      b_.push_back(0);
    }

    tableau_.assign(n_ * cols_, Rational(0));
    rhs_.resize(n_);
    basis_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational& cj = objective.coeffs[j];
      bool upper = sgn(cj) >= 0;
      basis_[j] = upper ? upper_col(j) : lower_col(j);
      int s = upper ? 1 : -1;
      for (std::size_t i = 0; i < cols_; ++i)
        if (sgn(rows_a_[i][j]) != 0) at(j, i) = s == 1 ? rows_a_[i][j] : Rational(-rows_a_[i][j]);
      rhs_[j] = upper ? cj : Rational(-cj);
    }
    reduced_.resize(cols_);
    for (std::size_t i = 0; i < cols_; ++i) {
      Rational d = b_[i];
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(at(j, i)) != 0) d -= b_[basis_[j]] * at(j, i);
      reduced_[i] = d;
    }
  }

  /// Runs to optimality; false when the primal region is empty.
  bool solve() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t i = 0; i < cols_; ++i)
        if (sgn(reduced_[i]) < 0) {
          enter = i;
          break;
        }
      if (enter == cols_) return true;

      std::size_t leave = n_;
      Rational best_ratio;
      for (std::size_t r = 0; r < n_; ++r) {
        if (sgn(at(r, enter)) <= 0) continue;
        Rational ratio = rhs_[r] / at(r, enter);
        if (leave == n_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == n_) return false;
      pivot(leave, enter);
    }
  }

  std::vector<Rational> primal_point() const {
    std::vector<Rational> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = 1 - reduced_[upper_col(j)];
    return x;
  }

 private:
  Rational& at(std::size_t r, std::size_t c) { return tableau_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return tableau_[r * cols_ + c]; }
  std::size_t upper_col(std::size_t j) const { return m_user_ + j; }
  std::size_t lower_col(std::size_t j) const { return m_user_ + n_ + j; }

  void pivot(std::size_t r, std::size_t e) {
    Rational inv = 1 / at(r, e);
    for (std::size_t i = 0; i < cols_; ++i)
      if (sgn(at(r, i)) != 0) at(r, i) *= inv;
    rhs_[r] *= inv;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == r || sgn(at(k, e)) == 0) continue;
      Rational f = at(k, e);
      for (std::size_t i = 0; i < cols_; ++i)
        if (sgn(at(r, i)) != 0) at(k, i) -= f * at(r, i);
      rhs_[k] -= f * rhs_[r];
    }
    Rational f = reduced_[e];
    for (std::size_t i = 0; i < cols_; ++i)
      if (sgn(at(r, i)) != 0) reduced_[i] -= f * at(r, i);
    basis_[r] = e;
  }

  std::size_t n_, m_user_, cols_;
  std::vector<std::vector<Rational>> rows_a_;
  std::vector<Rational> b_;
  std::vector<Rational> tableau_;
  std::vector<Rational> rhs_;
  std::vector<Rational> reduced_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<LpSolution> maximize(const AffineExpr& objective, std::span<const LinearConstraint> constraints) {
  DualSimplex lp(objective, constraints);
  if (!lp.solve()) return std::nullopt;
  LpSolution sol;
  sol.point = lp.primal_point();
  sol.value = objective.eval(sol.point);
  return sol;
}

std::optional<std::vector<Rational>> feasible_point(std::size_t num_vars,
                                                    std::span<const LinearConstraint> constraints) {
  auto r = maximize(AffineExpr(num_vars), constraints);
  if (!r) return std::nullopt;
  return std::move(r->point);
}

std::optional<std::vector<Rational>> lexmin_point(std::size_t num_vars, std::vector<LinearConstraint> constraints) {
  std::vector<Rational> point(num_vars);
  for (std::size_t j = 0; j < num_vars; ++j) {
    auto r = minimize(AffineExpr::variable(num_vars, j), constraints);
    if (!r) return std::nullopt;
    AffineExpr fix = AffineExpr::variable(num_vars, j);
    fix.constant = -r->value;
    constraints.push_back({fix, Sense::GreaterEq});
    constraints.push_back({fix, Sense::LessEq});
    point[j] = r->value;
  }
  if (num_vars == 0 && !feasible_point(0, constraints)) return std::nullopt;
  return point;
}

}  // namespace contlog
