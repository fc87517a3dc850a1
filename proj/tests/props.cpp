#include "props.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "biharm/afem.hpp"
#include "biharm/assembly.hpp"
#include "biharm/domains.hpp"
#include "biharm/eigensolve.hpp"
#include "biharm/estimator.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/space.hpp"

namespace props {

using namespace biharm;

namespace {

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Triangulation random_mesh(std::string_view name, std::string_view bc, int rounds, unsigned seed) {
  Triangulation mesh = domain_catalog(name, parse_boundary_spec(bc)).mesh;
  mesh = red_refine(mesh);
  std::mt19937 rng(seed);
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> marked;
    std::bernoulli_distribution pick(0.25);
    for (int t = 0; t < mesh.num_tris(); ++t) {
      if (pick(rng)) marked.push_back(t);
    }
    if (marked.empty()) marked.push_back(0);
    mesh = nvb_refine(mesh, marked);
  }
  return mesh;
}

// Quintic in physical coordinates, sum c_ab x^a y^b.
struct Quintic {
  double c[6][6] = {};

  static Quintic random(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Quintic q;
    for (int a = 0; a <= 5; ++a) {
      for (int b = 0; a + b <= 5; ++b) q.c[a][b] = u(rng);
    }
    return q;
  }

  double eval(const Point2& p, int dx, int dy) const {
    double s = 0.0;
    for (int a = dx; a <= 5; ++a) {
      for (int b = dy; a + b <= 5; ++b) {
        double f = c[a][b];
        for (int k = 0; k < dx; ++k) f *= a - k;
        for (int k = 0; k < dy; ++k) f *= b - k;
        s += f * std::pow(p.x, a - dx) * std::pow(p.y, b - dy);
      }
    }
    return s;
  }

  std::array<double, 6> jet(const Point2& p) const {
    return {eval(p, 0, 0), eval(p, 1, 0), eval(p, 0, 1), eval(p, 2, 0), eval(p, 1, 1), eval(p, 0, 2)};
  }
};

Point2 barycentric_point(const Triangulation& mesh, int t, double l1, double l2) {
  const Triangle& tri = mesh.tris()[t];
  const Point2& a = mesh.points()[tri.v[0]];
  const Point2& b = mesh.points()[tri.v[1]];
  const Point2& c = mesh.points()[tri.v[2]];
  return {a.x + l1 * (b.x - a.x) + l2 * (c.x - a.x), a.y + l1 * (b.y - a.y) + l2 * (c.y - a.y)};
}

Eigen::VectorXd random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  return x;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

Check element_duality() {
  Check c{"element nodal duality", true, ""};
  double worst = 0.0;
  for (std::string_view name : {"square", "lshape", "tri-90-60-30"}) {
    const Triangulation mesh = random_mesh(name, "clamped", 4, 11);
    const DofMap dofs = build_dof_map(mesh);
    for (int t = 0; t < mesh.num_tris(); ++t) {
      const ElementBasis basis = element_basis(mesh, dofs, t);
      const Triangle& tri = mesh.tris()[t];
      const double h = mesh.diameter(t);
      for (int i = 0; i < kElementDofs; ++i) {
        const LocalPolynomial phi = basis.function(i);
        for (int j = 0; j < kElementDofs; ++j) {
          double value = 0.0;
          double weight = 1.0;
          if (j < 18) {
            static constexpr int d[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
            const int k = j % 6;
            value = phi.eval(mesh.points()[tri.v[j / 6]], d[k][0], d[k][1]);
            weight = std::pow(h, d[k][0] + d[k][1]);
          } else {
            const EdgeFrame f = mesh.frame(mesh.tri_edge(t, j - 18));
            value = f.normal.x * phi.eval(f.midpoint, 1, 0) + f.normal.y * phi.eval(f.midpoint, 0, 1);
            weight = h;
          }
          // Scale functional j and basis function i to unit size.
          const double iscale = i < 18 ? std::pow(h, -(i % 6 == 0 ? 0 : i % 6 < 3 ? 1 : 2)) : 1.0 / h;
          worst = std::max(worst, std::abs(value * weight * iscale - (i == j ? 1.0 : 0.0)));
        }
      }
    }
  }
  c.pass = worst <= 1e-9;
  c.detail = fmt("max |L_j(phi_i) - delta_ij| (scaled) = %.2e", worst);
  return c;
}

Check polynomial_reproduction() {
  Check c{"P5 reproduction", true, ""};
  double worst = 0.0;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::string_view name : {"square", "lshape", "drum1"}) {
    const Triangulation mesh = random_mesh(name, "clamped", 3, 7);
    const DofMap dofs = build_dof_map(mesh);
    const std::vector<ElementBasis> bases = element_bases(mesh, dofs);
    const Quintic q = Quintic::random(static_cast<unsigned>(name.size()));
    const Eigen::VectorXd x = interpolate(mesh, dofs, [&](const Point2& p) { return q.jet(p); });
    const std::span<const double> xs(x.data(), x.size());
    for (int t = 0; t < mesh.num_tris(); ++t) {
      double l1 = u(rng);
      double l2 = u(rng);
      if (l1 + l2 > 1.0) {
        l1 = 1.0 - l1;
        l2 = 1.0 - l2;
      }
      const Point2 p = barycentric_point(mesh, t, l1, l2);
      for (auto [dx, dy] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {1, 3}}) {
        const double exact = q.eval(p, dx, dy);
        const double got = evaluate(mesh, bases, xs, t, p, dx, dy);
        const double size = std::max(1.0, std::abs(exact)) * std::pow(10.0, dx + dy);
        worst = std::max(worst, std::abs(got - exact) / size);
      }
    }
  }
  c.pass = worst <= 1e-9;
  c.detail = fmt("max scaled derivative error %.2e", worst);
  return c;
}

Check c1_across_edges() {
  Check c{"C1 across edges", true, ""};
  double worst = 0.0;
  for (std::string_view name : {"square", "lshape", "rect-hole"}) {
    const Triangulation mesh = random_mesh(name, "clamped", 3, 3);
    const DofMap dofs = build_dof_map(mesh);
    const std::vector<ElementBasis> bases = element_bases(mesh, dofs);
    const Eigen::VectorXd x = random_vector(dofs.size(), 17);
    const std::span<const double> xs(x.data(), x.size());
    for (int e = 0; e < mesh.num_edges(); ++e) {
      const Edge& edge = mesh.edges()[e];
      if (edge.on_boundary()) continue;
      const Point2& a = mesh.points()[edge.lo];
      const Point2& b = mesh.points()[edge.hi];
      const double h = std::hypot(b.x - a.x, b.y - a.y);
      for (double s : {0.1, 0.37, 0.5, 0.81}) {
        const Point2 p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
        for (auto [dx, dy] : {std::pair{0, 0}, {1, 0}, {0, 1}}) {
          const double l = evaluate(mesh, bases, xs, edge.tris[0], p, dx, dy);
          const double r = evaluate(mesh, bases, xs, edge.tris[1], p, dx, dy);
          // DOFs of order k give values of size h^-k around the edge.
          const double size = std::max({1.0, std::abs(l)}) * std::pow(h, -2.0 - dx - dy);
          worst = std::max(worst, std::abs(l - r) / size);
        }
      }
    }
  }
  c.pass = worst <= 1e-10;
  c.detail = fmt("max scaled jump of u, grad u = %.2e", worst);
  return c;
}

Check c2_at_vertices() {
  Check c{"C2 at vertices", true, ""};
  double worst = 0.0;
  for (std::string_view name : {"square", "lshape", "drum2"}) {
    const Triangulation mesh = random_mesh(name, "clamped", 3, 9);
    const DofMap dofs = build_dof_map(mesh);
    const std::vector<ElementBasis> bases = element_bases(mesh, dofs);
    const Eigen::VectorXd x = random_vector(dofs.size(), 23);
    const std::span<const double> xs(x.data(), x.size());
    for (int t = 0; t < mesh.num_tris(); ++t) {
      for (int v : mesh.tris()[t].v) {
        const Point2& p = mesh.points()[v];
        const double hxx = evaluate(mesh, bases, xs, t, p, 2, 0);
        const double hxy = evaluate(mesh, bases, xs, t, p, 1, 1);
        const double hyy = evaluate(mesh, bases, xs, t, p, 0, 2);
        const double size = 1.0 + std::abs(x[dofs.vertex_dof(v, kDxx)]) + std::abs(x[dofs.vertex_dof(v, kDyy)]);
        worst = std::max({worst, std::abs(hxx - x[dofs.vertex_dof(v, kDxx)]) / size,
                          std::abs(hxy - x[dofs.vertex_dof(v, kDxy)]) / size,
                          std::abs(hyy - x[dofs.vertex_dof(v, kDyy)]) / size});
      }
    }
  }
  c.pass = worst <= 1e-7;
  c.detail = fmt("max Hessian mismatch at shared vertices %.2e", worst);
  return c;
}

Check quadrature_exactness() {
  Check c{"quadrature monomial exactness", true, ""};
  double worst = 0.0;
  for (int d = 1; d <= 20; ++d) {
    const QuadratureRule& rule = triangle_quadrature(d);
    for (int a = 0; a <= d; ++a) {
      for (int b = 0; a + b <= d; ++b) {
        double s = 0.0;
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
          s += rule.weights[q] * std::pow(rule.points[q][0], a) * std::pow(rule.points[q][1], b);
        }
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        worst = std::max(worst, std::abs(0.5 * s - exact) / exact);
      }
    }
  }
  const LineRule& line = edge_quadrature();
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t q = 0; q < line.points.size(); ++q) s += line.weights[q] * std::pow(line.points[q], k);
    worst = std::max(worst, std::abs(s - 1.0 / (k + 1)) * (k + 1));
  }
  c.pass = worst <= 1e-12;
  c.detail = fmt("max relative monomial error %.2e (triangle degrees 1..20, edge degree 11)", worst);
  return c;
}

Check estimator_zero_cases() {
  Check c{"estimator zero cases", true, ""};
  // Affine function on a free plate: every residual vanishes.
  const Triangulation free_mesh = random_mesh("lshape", "free", 3, 2);
  DofMap dofs = build_dof_map(free_mesh);
  std::vector<ElementBasis> bases = element_bases(free_mesh, dofs);
  Eigen::VectorXd x = interpolate(free_mesh, dofs, [](const Point2& p) {
    return std::array<double, 6>{1.0 + 2.0 * p.x - 3.0 * p.y, 2.0, -3.0, 0.0, 0.0, 0.0};
  });
  const EstimatorReport affine =
      local_estimator(free_mesh, dofs, bases, std::span<const double>(x.data(), x.size()), 0.0);
  const double affine_max = *std::max_element(affine.eta2.begin(), affine.eta2.end());

  // x^4 on a clamped mesh with lambda = 0: only the volume term 24^2 |T|^3.
  const Triangulation mesh = random_mesh("square", "clamped", 3, 4);
  dofs = build_dof_map(mesh);
  bases = element_bases(mesh, dofs);
  x = interpolate(mesh, dofs, [](const Point2& p) {
    const double x2 = p.x * p.x;
    return std::array<double, 6>{x2 * x2, 4.0 * x2 * p.x, 0.0, 12.0 * x2, 0.0, 0.0};
  });
  const EstimatorReport quartic = local_estimator(mesh, dofs, bases, std::span<const double>(x.data(), x.size()), 0.0);
  double quartic_dev = 0.0;
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const double expected = 576.0 * std::pow(mesh.area(t), 3);
    quartic_dev = std::max(quartic_dev, std::abs(quartic.eta2[t] - expected) / expected);
  }
  c.pass = affine_max <= 1e-20 && quartic_dev <= 1e-8;
  c.detail = fmt("affine max eta2 %.2e; x^4 max rel deviation from 576|T|^3 %.2e", affine_max, quartic_dev);
  return c;
}

Check estimator_clamped_formula() {
  Check c{"estimator clamped formula", true, ""};
  const Triangulation mesh = random_mesh("lshape", "clamped", 2, 6);
  const DofMap dofs = build_dof_map(mesh);
  const std::vector<ElementBasis> bases = element_bases(mesh, dofs);
  const Eigen::VectorXd x = random_vector(dofs.size(), 29);
  const std::span<const double> xs(x.data(), x.size());
  const double lambda = 1.7;
  const EstimatorReport report = local_estimator(mesh, dofs, bases, xs, lambda);

  std::vector<double> oracle(mesh.num_tris(), 0.0);
  const QuadratureRule& rule = triangle_quadrature(10);
  for (int t = 0; t < mesh.num_tris(); ++t) {
    double vol = 0.0;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const Point2 p = barycentric_point(mesh, t, rule.points[q][0], rule.points[q][1]);
      const double bih = evaluate(mesh, bases, xs, t, p, 4, 0) + 2.0 * evaluate(mesh, bases, xs, t, p, 2, 2) +
                         evaluate(mesh, bases, xs, t, p, 0, 4);
      const double r = lambda * evaluate(mesh, bases, xs, t, p, 0, 0) - bih;
      vol += rule.weights[q] * r * r;
    }
    oracle[t] += std::pow(mesh.area(t), 3) * vol;
  }
  const LineRule line = gauss_legendre(6);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (edge.on_boundary()) continue;
    const EdgeFrame f = mesh.frame(e);
    const Point2 n = f.normal;
    const Point2 tau = f.tangent;
    auto side = [&](int t, const Point2& p) {
      auto d = [&](int dx, int dy) { return evaluate(mesh, bases, xs, t, p, dx, dy); };
      const double nn = n.x * n.x * d(2, 0) + 2.0 * n.x * n.y * d(1, 1) + n.y * n.y * d(0, 2);
      const double lap_x = d(3, 0) + d(1, 2);
      const double lap_y = d(2, 1) + d(0, 3);
      const double ttn = tau.x * tau.x * (n.x * d(3, 0) + n.y * d(2, 1)) +
                         2.0 * tau.x * tau.y * (n.x * d(2, 1) + n.y * d(1, 2)) +
                         tau.y * tau.y * (n.x * d(1, 2) + n.y * d(0, 3));
      return std::pair{nn, ttn + n.x * lap_x + n.y * lap_y};
    };
    double jnn = 0.0;
    double jnl = 0.0;
    const Point2& a = mesh.points()[edge.lo];
    const Point2& b = mesh.points()[edge.hi];
    for (std::size_t q = 0; q < line.points.size(); ++q) {
      const double s = line.points[q];
      const Point2 p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      const auto [nn0, nl0] = side(edge.tris[0], p);
      const auto [nn1, nl1] = side(edge.tris[1], p);
      jnn += line.weights[q] * f.length * (nn0 - nn1) * (nn0 - nn1);
      jnl += line.weights[q] * f.length * (nl0 - nl1) * (nl0 - nl1);
    }
    for (int t : edge.tris) oracle[t] += std::sqrt(mesh.area(t)) * jnn + std::pow(mesh.area(t), 1.5) * jnl;
  }
  double worst = 0.0;
  for (int t = 0; t < mesh.num_tris(); ++t) {
    worst = std::max(worst, std::abs(report.eta2[t] - oracle[t]) / std::max(oracle[t], 1e-300));
  }
  c.pass = worst <= 1e-8;
  c.detail = fmt("max rel deviation from direct evaluation %.2e on %d triangles", worst, mesh.num_tris());
  return c;
}

Check doerfler_minimal() {
  Check c{"Doerfler minimal cardinality", true, ""};
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> value(0, 20);
  int cases = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> eta(n);
      for (double& v : eta) v = value(rng);
      eta[trial % n] += 1.0;
      double total = 0.0;
      for (double v : eta) total += v;
      for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double goal = theta * total;
        int best = n + 1;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) s += eta[i];
          }
          if (s >= goal) best = std::min(best, std::popcount(mask));
        }
        const std::vector<int> marked = doerfler_mark(eta, theta);
        double s = 0.0;
        for (int i : marked) s += eta[i];
        ++cases;
        if (static_cast<int>(marked.size()) != best || s < goal || !std::is_sorted(marked.begin(), marked.end())) {
          c.pass = false;
          c.detail = fmt("n=%d theta=%.1f: marked %zu, minimum %d", n, theta, marked.size(), best);
          return c;
        }
      }
    }
  }
  c.detail = fmt("%d random cases with |T| <= 12 match brute force", cases);
  return c;
}

Check nvb_conformity() {
  Check c{"NVB conformity", true, ""};
  int rounds = 0;
  for (std::string_view name : {"square", "lshape", "rect-hole", "drum1"}) {
    Triangulation mesh = domain_catalog(name, default_boundary(name)).mesh;
    std::mt19937 rng(static_cast<unsigned>(name.size()));
    const double area = mesh.total_area();
    for (int r = 0; r < 8; ++r) {
      std::vector<int> marked;
      std::bernoulli_distribution pick(0.2);
      for (int t = 0; t < mesh.num_tris(); ++t) {
        if (pick(rng)) marked.push_back(t);
      }
      if (marked.empty()) marked.push_back(mesh.num_tris() - 1);
      const Triangulation fine = nvb_refine(mesh, marked);
      try {
        fine.validate();
      } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string(name) + ": " + e.what();
        return c;
      }
      auto key = [](const Triangulation& m, int t) {
        std::array<std::pair<double, double>, 3> k;
        for (int i = 0; i < 3; ++i) k[i] = {m.points()[m.tris()[t].v[i]].x, m.points()[m.tris()[t].v[i]].y};
        std::sort(k.begin(), k.end());
        return k;
      };
      std::set<std::array<std::pair<double, double>, 3>> kept;
      for (int t = 0; t < fine.num_tris(); ++t) kept.insert(key(fine, t));
      for (int t : marked) {
        if (kept.count(key(mesh, t))) {
          c.pass = false;
          c.detail = fmt("%s round %d: marked triangle %d survived", std::string(name).c_str(), r, t);
          return c;
        }
      }
      if (std::abs(fine.total_area() - area) > 1e-12 * area) {
        c.pass = false;
        c.detail = std::string(name) + ": area changed";
        return c;
      }
      mesh = fine;
      ++rounds;
    }
  }
  c.detail = fmt("%d refinements conforming, marked triangles always refined", rounds);
  return c;
}

Check eigenpair_orthogonality() {
  Check c{"B-orthonormal, A-orthogonal eigenpairs", true, ""};
  double b_dev = 0.0;
  double a_dev = 0.0;
  for (std::string_view name : {"square", "lshape"}) {
    const Triangulation mesh = random_mesh(name, "clamped", 2, 8);
    const DiscreteSpace space = build_space(mesh, parse_boundary_spec("clamped"));
    const SparseSymMatrix a = reduce(assemble_stiffness(mesh, space.dofs, space.bases), space.reduction);
    const SparseSymMatrix b = reduce(assemble_mass(mesh, space.dofs, space.bases, MassForm::L2), space.reduction);
    SolverConfig cfg;
    cfg.count = 10;
    const std::vector<EigenPair> pairs = solve_eigs(a, b, cfg);
    const double top = pairs.back().value;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        const double bij = pairs[i].x.dot(b.matrix() * pairs[j].x);
        const double aij = pairs[i].x.dot(a.matrix() * pairs[j].x);
        b_dev = std::max(b_dev, std::abs(bij - (i == j ? 1.0 : 0.0)));
        a_dev = std::max(a_dev, std::abs(aij - (i == j ? pairs[i].value : 0.0)) / top);
      }
    }
  }
  c.pass = b_dev <= 1e-9 && a_dev <= 1e-8;
  c.detail = fmt("max |X^T B X - I| = %.2e, max |X^T A X - Lambda| / lambda_10 = %.2e", b_dev, a_dev);
  return c;
}

Check pipeline_determinism() {
  Check c{"pipeline determinism", true, ""};
  AfemConfig cfg;
  cfg.domain = "lshape";
  cfg.max_ndof = 3000;
  const std::vector<LevelRecord> first = afem_loop(cfg);
  const std::vector<LevelRecord> second = afem_loop(cfg);
  cfg.threads = 3;
  const std::vector<LevelRecord> threaded = afem_loop(cfg);
  auto same = [](const std::vector<LevelRecord>& x, const std::vector<LevelRecord>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].ndof != y[i].ndof || x[i].ntri != y[i].ntri || x[i].lambda != y[i].lambda || x[i].eta != y[i].eta ||
          x[i].marked != y[i].marked || x[i].lambdas != y[i].lambdas) {
        return false;
      }
    }
    return true;
  };
  c.pass = same(first, second) && same(first, threaded);
  c.detail = fmt("%zu levels bitwise identical across reruns and thread counts: %s", first.size(),
                 c.pass ? "yes" : "no");
  return c;
}

std::vector<Check> all() {
  return {element_duality(),      polynomial_reproduction(), c1_across_edges(),
          c2_at_vertices(),       quadrature_exactness(),    estimator_zero_cases(),
          estimator_clamped_formula(), doerfler_minimal(),   nvb_conformity(),
          eigenpair_orthogonality(),   pipeline_determinism()};
}

DenseComparison dense_oracle_square(int red_refinements) {
  Triangulation mesh = domain_catalog("square", parse_boundary_spec("clamped")).mesh;
  for (int i = 0; i < red_refinements; ++i) mesh = red_refine(mesh);
  const DiscreteSpace space = build_space(mesh, parse_boundary_spec("clamped"));
  const SparseSymMatrix a = reduce(assemble_stiffness(mesh, space.dofs, space.bases), space.reduction);
  const SparseSymMatrix b = reduce(assemble_mass(mesh, space.dofs, space.bases, MassForm::L2), space.reduction);

  std::stringstream fa;
  std::stringstream fb;
  write_coordinate(fa, a);
  write_coordinate(fb, b);
  const Eigen::MatrixXd da = Eigen::MatrixXd(read_coordinate(fa).matrix());
  const Eigen::MatrixXd db = Eigen::MatrixXd(read_coordinate(fb).matrix());
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(da, db, Eigen::EigenvaluesOnly);

  SolverConfig cfg;
  cfg.count = 10;
  const std::vector<EigenPair> pairs = solve_eigs(a, b, cfg);
  DenseComparison out;
  out.ndof = a.dim();
  for (int k = 0; k < 10; ++k) {
    out.sparse.push_back(pairs[k].value);
    out.dense.push_back(dense.eigenvalues()[k]);
    out.max_rel = std::max(out.max_rel, std::abs(pairs[k].value - dense.eigenvalues()[k]) / dense.eigenvalues()[k]);
  }
  return out;
}

}  // namespace props
