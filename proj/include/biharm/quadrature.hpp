#pragma once

#include <array>
#include <vector>

namespace biharm {

/// Rule on the reference triangle (0,0),(1,0),(0,1). Points are the
/// barycentric coordinates (l1, l2) of vertices 1 and 2; weights sum to one,
/// so the integral over a triangle T is |T| * sum_q w_q f(x_q).
struct QuadratureRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Gauss-Legendre rule on [0,1] with n points (weights sum to one).
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

LineRule gauss_legendre(int n);

/// Collapsed (Duffy) product of Gauss-Legendre rules, exact for all
/// polynomials of total degree <= degree. Supports 1 <= degree <= 20.
const QuadratureRule& triangle_quadrature(int degree = 12);

/// Six-point Gauss rule on [0,1], exact to degree 11.
const LineRule& edge_quadrature();

}  // namespace biharm
