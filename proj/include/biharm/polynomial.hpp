#pragma once

#include <array>

#include <Eigen/Dense>

#include "biharm/mesh.hpp"

namespace biharm {

inline constexpr int kDegree = 5;
inline constexpr int kNumMonomials = 21;

using MonomialVector = Eigen::Matrix<double, kNumMonomials, 1>;

/// Position of xi^a eta^b in the graded ordering 1, xi, eta, xi^2, xi eta, ...
constexpr int monomial_index(int a, int b) {
  const int d = a + b;
  return d * (d + 1) / 2 + b;
}

/// (a, b) exponents of monomial i.
std::array<int, 2> monomial_exponents(int i);

/// d^da/dxi^da d^db/deta^db of every monomial xi^a eta^b (a+b <= 5) at (xi, eta).
MonomialVector monomial_derivatives(double xi, double eta, int da, int db);

/// Quintic in the scaled, centred coordinates xi = (x-cx)/h, eta = (y-cy)/h.
struct LocalPolynomial {
  MonomialVector coeffs = MonomialVector::Zero();
  Point2 center;
  double scale = 1.0;

  /// Physical partial derivative d^dx/dx^dx d^dy/dy^dy at p.
  double eval(const Point2& p, int dx = 0, int dy = 0) const;

  /// Coefficients of the physical derivative, same centre and scale.
  LocalPolynomial derivative(int dx, int dy) const;
};

}  // namespace biharm
