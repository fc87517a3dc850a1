#include "biharm/assembly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "biharm/error.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/parallel.hpp"

namespace biharm {

namespace {

using Gram = Eigen::Matrix<double, kNumMonomials, kNumMonomials>;

Point2 map_point(const Triangulation& mesh, int t, const std::array<double, 2>& bary) {
  const auto& v = mesh.tris()[t].v;
  const Point2& a = mesh.points()[v[0]];
  const Point2& b = mesh.points()[v[1]];
  const Point2& c = mesh.points()[v[2]];
  return {a.x + bary[0] * (b.x - a.x) + bary[1] * (c.x - a.x), a.y + bary[0] * (b.y - a.y) + bary[1] * (c.y - a.y)};
}

// Gram matrix of the monomials for sum_k (d^{alpha_k} m_a, d^{alpha_k} m_b)
// with weights, in physical units.
Gram monomial_gram(const Triangulation& mesh, const ElementBasis& basis, int t, int degree,
                   std::span<const std::array<int, 3>> terms) {
  const QuadratureRule& rule = triangle_quadrature(degree);
  const double area = mesh.area(t);
  Gram g = Gram::Zero();
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const Point2 p = map_point(mesh, t, rule.points[q]);
    const double xi = (p.x - basis.center.x) / basis.scale;
    const double eta = (p.y - basis.center.y) / basis.scale;
    for (const auto& [dx, dy, mult] : terms) {
      const MonomialVector d = monomial_derivatives(xi, eta, dx, dy) / std::pow(basis.scale, dx + dy);
      g.noalias() += (rule.weights[q] * area * mult) * d * d.transpose();
    }
  }
  return g;
}

using ElementKernel = std::function<ElementMatrix(int)>;

SparseSymMatrix assemble(const Triangulation& mesh, const DofMap& dofs, std::span<const ElementBasis> bases,
                         int threads, const ElementKernel& kernel) {
  const int nt = mesh.num_tris();
  constexpr int kChunk = 2048;
  std::vector<ElementMatrix> blocks;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nt) * kElementDofs * kElementDofs);
  for (int begin = 0; begin < nt; begin += kChunk) {
    const int end = std::min(nt, begin + kChunk);
    blocks.resize(end - begin);
    parallel_for(end - begin, threads, [&](int i) { blocks[i] = kernel(begin + i); });
    // Serial scatter in triangle order keeps the summation order fixed.
    for (int t = begin; t < end; ++t) {
      const auto& d = bases[t].dofs;
      const ElementMatrix& k = blocks[t - begin];
      for (int j = 0; j < kElementDofs; ++j) {
        for (int i = 0; i < kElementDofs; ++i) triplets.emplace_back(d[i], d[j], k(i, j));
      }
    }
  }
  SparseSymMatrix::Storage m(dofs.size(), dofs.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return SparseSymMatrix(std::move(m));
}

}  // namespace

SparseSymMatrix::SparseSymMatrix(Storage m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix not square");
  m_.makeCompressed();
}

double SparseSymMatrix::asymmetry() const {
  const Storage diff = m_ - Storage(m_.transpose());
  double largest = 0.0;
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (Storage::InnerIterator it(m_, k); it; ++it) largest = std::max(largest, std::abs(it.value()));
  }
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (Storage::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return largest > 0.0 ? worst / largest : 0.0;
}

ElementMatrix element_stiffness(const Triangulation& mesh, const ElementBasis& basis, int t, int quad_degree) {
  static constexpr std::array<std::array<int, 3>, 3> kHessian{{{2, 0, 1}, {1, 1, 2}, {0, 2, 1}}};
  const Gram g = monomial_gram(mesh, basis, t, quad_degree, kHessian);
  ElementMatrix k = basis.coeffs.transpose() * g * basis.coeffs;
  return 0.5 * (k + k.transpose());
}

ElementMatrix element_mass(const Triangulation& mesh, const ElementBasis& basis, int t, MassForm form,
                           int quad_degree) {
  static constexpr std::array<std::array<int, 3>, 1> kValue{{{0, 0, 1}}};
  static constexpr std::array<std::array<int, 3>, 2> kGradient{{{1, 0, 1}, {0, 1, 1}}};
  const Gram g = form == MassForm::L2 ? monomial_gram(mesh, basis, t, quad_degree, kValue)
                                      : monomial_gram(mesh, basis, t, quad_degree, kGradient);
  ElementMatrix m = basis.coeffs.transpose() * g * basis.coeffs;
  return 0.5 * (m + m.transpose());
}

SparseSymMatrix assemble_stiffness(const Triangulation& mesh, const DofMap& dofs,
                                   std::span<const ElementBasis> bases, int threads, int quad_degree) {
  return assemble(mesh, dofs, bases, threads,
                  [&](int t) { return element_stiffness(mesh, bases[t], t, quad_degree); });
}

SparseSymMatrix assemble_mass(const Triangulation& mesh, const DofMap& dofs, std::span<const ElementBasis> bases,
                              MassForm form, int threads, int quad_degree) {
  return assemble(mesh, dofs, bases, threads,
                  [&](int t) { return element_mass(mesh, bases[t], t, form, quad_degree); });
}

double rayleigh_quotient(const Triangulation& mesh, std::span<const ElementBasis> bases, std::span<const double> u,
                         MassForm form) {
  const QuadratureRule& rule = triangle_quadrature(10);
  double energy = 0.0;
  double mass = 0.0;
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const LocalPolynomial p = bases[t].local(u);
    const double h = p.scale;
    double e = 0.0;
    double m = 0.0;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const Point2 x = map_point(mesh, t, rule.points[q]);
      const double xi = (x.x - p.center.x) / h;
      const double eta = (x.y - p.center.y) / h;
      const double dxx = p.coeffs.dot(monomial_derivatives(xi, eta, 2, 0));
      const double dxy = p.coeffs.dot(monomial_derivatives(xi, eta, 1, 1));
      const double dyy = p.coeffs.dot(monomial_derivatives(xi, eta, 0, 2));
      e += rule.weights[q] * (dxx * dxx + 2.0 * dxy * dxy + dyy * dyy);
      if (form == MassForm::L2) {
        const double v = p.coeffs.dot(monomial_derivatives(xi, eta, 0, 0));
        m += rule.weights[q] * v * v;
      } else {
        const double dx = p.coeffs.dot(monomial_derivatives(xi, eta, 1, 0));
        const double dy = p.coeffs.dot(monomial_derivatives(xi, eta, 0, 1));
        m += rule.weights[q] * (dx * dx + dy * dy);
      }
    }
    const double area = mesh.area(t);
    energy += area * e / (h * h * h * h);
    mass += form == MassForm::L2 ? area * m : area * m / (h * h);
  }
  return energy / mass;
}

SparseSymMatrix reduce(const SparseSymMatrix& m, const ReductionMap& p) {
  if (p.prolongation.rows() != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "prolongation rows " + std::to_string(p.prolongation.rows()) +
                                                  " vs matrix dimension " + std::to_string(m.dim()));
  }
  SparseSymMatrix::Storage mp = m.matrix() * p.prolongation;
  SparseSymMatrix::Storage r = SparseSymMatrix::Storage(p.prolongation.transpose()) * mp;
  // Symmetrize the rounding of the triple product.
  SparseSymMatrix::Storage sym = 0.5 * (r + SparseSymMatrix::Storage(r.transpose()));
  return SparseSymMatrix(std::move(sym));
}

void write_coordinate(std::ostream& out, const SparseSymMatrix& m) {
  const auto& s = m.matrix();
  out << s.rows() << ' ' << s.nonZeros() << '\n';
  char buf[64];
  for (int k = 0; k < s.outerSize(); ++k) {
    for (SparseSymMatrix::Storage::InnerIterator it(s, k); it; ++it) {
      auto res = std::to_chars(buf, buf + sizeof(buf), it.value());
      out << it.row() << ' ' << it.col() << ' ' << std::string_view(buf, res.ptr - buf) << '\n';
    }
  }
}

SparseSymMatrix read_coordinate(std::istream& in) {
  long n = -1;
  long nnz = -1;
  if (!(in >> n >> nnz) || n < 0 || nnz < 0) throw Error(ErrorKind::ParseError, "bad coordinate header");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(nnz);
  for (long k = 0; k < nnz; ++k) {
    long i = 0;
    long j = 0;
    std::string value;
    if (!(in >> i >> j >> value) || i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorKind::ParseError, "bad coordinate entry");
    }
    double v = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc()) throw Error(ErrorKind::ParseError, "bad value '" + value + "'");
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
  }
  SparseSymMatrix::Storage m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseSymMatrix(std::move(m));
}

}  // namespace biharm
