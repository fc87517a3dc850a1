#include "biharm/polynomial.hpp"

#include <cmath>

namespace biharm {

namespace {

constexpr std::array<std::array<int, 2>, kNumMonomials> make_exponents() {
  std::array<std::array<int, 2>, kNumMonomials> out{};
  for (int d = 0; d <= kDegree; ++d) {
    for (int b = 0; b <= d; ++b) out[monomial_index(d - b, b)] = {d - b, b};
  }
  return out;
}

constexpr auto kExponents = make_exponents();

// n (n-1) ... (n-k+1)
constexpr double falling(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

std::array<int, 2> monomial_exponents(int i) { return kExponents[i]; }

MonomialVector monomial_derivatives(double xi, double eta, int da, int db) {
  std::array<double, kDegree + 1> px{};
  std::array<double, kDegree + 1> py{};
  px[0] = py[0] = 1.0;
  for (int k = 1; k <= kDegree; ++k) {
    px[k] = px[k - 1] * xi;
    py[k] = py[k - 1] * eta;
  }
  MonomialVector out;
  for (int i = 0; i < kNumMonomials; ++i) {
    const auto [a, b] = kExponents[i];
    if (a < da || b < db) {
      out[i] = 0.0;
    } else {
      out[i] = falling(a, da) * falling(b, db) * px[a - da] * py[b - db];
    }
  }
  return out;
}

double LocalPolynomial::eval(const Point2& p, int dx, int dy) const {
  const double xi = (p.x - center.x) / scale;
  const double eta = (p.y - center.y) / scale;
  return coeffs.dot(monomial_derivatives(xi, eta, dx, dy)) / std::pow(scale, dx + dy);
}

LocalPolynomial LocalPolynomial::derivative(int dx, int dy) const {
  LocalPolynomial out;
  out.center = center;
  out.scale = scale;
  const double factor = 1.0 / std::pow(scale, dx + dy);
  for (int i = 0; i < kNumMonomials; ++i) {
    const auto [a, b] = kExponents[i];
    if (a < dx || b < dy) continue;
    out.coeffs[monomial_index(a - dx, b - dy)] += coeffs[i] * falling(a, dx) * falling(b, dy) * factor;
  }
  return out;
}

}  // namespace biharm
