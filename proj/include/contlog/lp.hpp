#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "contlog/rational.hpp"

namespace contlog {

/// constant + sum_i coeffs[i] * x_i over a fixed number of variables.
struct AffineExpr {
  Rational constant;
  std::vector<Rational> coeffs;

  AffineExpr() = default;
  explicit AffineExpr(std::size_t num_vars, Rational c = 0) : constant(std::move(c)), coeffs(num_vars) {}
  static AffineExpr variable(std::size_t num_vars, std::size_t i);

  std::size_t num_vars() const { return coeffs.size(); }
  bool is_constant() const;
  Rational eval(std::span<const Rational> point) const;

  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator-=(const AffineExpr& o);
  AffineExpr& operator*=(const Rational& q);
  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, const Rational& q) { return a *= q; }
  friend bool operator==(const AffineExpr& a, const AffineExpr& b) = default;
};

enum class Sense { GreaterEq, LessEq };

/// `expr >= 0` or `expr <= 0`.
struct LinearConstraint {
  AffineExpr expr;
  Sense sense = Sense::GreaterEq;

  bool holds_at(std::span<const Rational> point) const;
};

struct LpSolution {
  Rational value;
  std::vector<Rational> point;
};

/// Maximises `objective` over the unit box [0,1]^n intersected with
/// `constraints`. Returns nullopt when the region is empty. The returned point
/// is a vertex of the region.
std::optional<LpSolution> maximize(const AffineExpr& objective, std::span<const LinearConstraint> constraints);

inline std::optional<LpSolution> minimize(const AffineExpr& objective,
                                          std::span<const LinearConstraint> constraints) {
  auto r = maximize(objective * Rational(-1), constraints);
  if (r) r->value = -r->value;
  return r;
}

/// Some point of the region, or nullopt when it is empty.
std::optional<std::vector<Rational>> feasible_point(std::size_t num_vars,
                                                    std::span<const LinearConstraint> constraints);

/// Lexicographically least point of the region.
std::optional<std::vector<Rational>> lexmin_point(std::size_t num_vars, std::vector<LinearConstraint> constraints);

}  // namespace contlog
