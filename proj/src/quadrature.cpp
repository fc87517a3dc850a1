#include "biharm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "biharm/error.hpp"

namespace biharm {

LineRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::UnsupportedDegree, "Gauss rule needs at least one point");
  LineRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.5;
  return rule;
}

namespace {

QuadratureRule make_triangle_rule(int degree) {
  // x = u, y = (1-u) v with Jacobian (1-u): a monomial of total degree d
  // becomes degree d+1 in u, so n Gauss points reach degree 2n-2.
  const int n = (degree + 3) / 2;
  const LineRule line = gauss_legendre(n);
  QuadratureRule rule;
  rule.degree = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    const double u = line.points[i];
    for (int j = 0; j < n; ++j) {
      const double v = line.points[j];
      rule.points.push_back({u, (1.0 - u) * v});
      rule.weights.push_back(2.0 * line.weights[i] * line.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace

const QuadratureRule& triangle_quadrature(int degree) {
  if (degree < 1 || degree > 20) {
    throw Error(ErrorKind::UnsupportedDegree, "triangle rules cover degrees 1..20, got " + std::to_string(degree));
  }
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_triangle_rule(degree)).first;
  return it->second;
}

const LineRule& edge_quadrature() {
  static const LineRule rule = gauss_legendre(6);
  return rule;
}

}  // namespace biharm
