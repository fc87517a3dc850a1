#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "biharm/domains.hpp"
#include "biharm/error.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/space.hpp"
#include "props.hpp"

using namespace biharm;

TEST_CASE("element nodal duality") {
  const props::Check c = props::element_duality();
  INFO(c.detail);
  CHECK(c.pass);
}

TEST_CASE("quintics are reproduced") {
  const props::Check c = props::polynomial_reproduction();
  INFO(c.detail);
  CHECK(c.pass);
}

TEST_CASE("C1 across edges and C2 at vertices") {
  const props::Check c1 = props::c1_across_edges();
  INFO(c1.detail);
  CHECK(c1.pass);
  const props::Check c2 = props::c2_at_vertices();
  INFO(c2.detail);
  CHECK(c2.pass);
}

TEST_CASE("dof counts") {
  const Triangulation m = domain_catalog("square", parse_boundary_spec("free")).mesh;
  const DofMap d = build_dof_map(m);
  CHECK(d.size() == 6 * 4 + 5);
  const DiscreteSpace free_space = build_space(m, parse_boundary_spec("free"));
  CHECK(free_space.reduction.n_free() == d.size());
  const Triangulation mc = domain_catalog("square", parse_boundary_spec("clamped")).mesh;
  const DiscreteSpace clamped = build_space(mc, parse_boundary_spec("clamped"));
  CHECK(clamped.reduction.n_free() == 1);
  const std::array<int, 21> e = d.element_dofs(m, 0);
  CHECK(e[18] >= 24);
}

TEST_CASE("eliminate") {
  ConstraintSet set;
  set.rows.push_back({{{0, 1.0}}});
  set.rows.push_back({{{0, 1.0}, {1, -1.0}}});
  set.rows.push_back({{{1, 2.0}}});  // redundant
  const ReductionMap p = eliminate(set, 4);
  CHECK(p.rank == 2);
  CHECK(p.n_free() == 2);
  Eigen::VectorXd y(2);
  y << 3.0, -1.0;
  const Eigen::VectorXd x = p.expand(y);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.0);

  ConstraintSet bad;
  bad.rows.push_back({{{9, 1.0}}});
  CHECK_THROWS_AS(eliminate(bad, 4), Error);
}

TEST_CASE("constrained functions satisfy the boundary conditions") {
  Triangulation m = domain_catalog("lshape", parse_boundary_spec("clamped")).mesh;
  m = red_refine(m);
  const DiscreteSpace s = build_space(m, parse_boundary_spec("clamped"));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd y(s.reduction.n_free());
  for (int i = 0; i < y.size(); ++i) y[i] = u(rng);
  const Eigen::VectorXd x = s.reduction.expand(y);
  const std::span<const double> xs(x.data(), x.size());
  double worst = 0.0;
  for (const Edge& e : m.edges()) {
    if (!e.on_boundary()) continue;
    const Point2& a = m.points()[e.lo];
    const Point2& b = m.points()[e.hi];
    for (double t : {0.2, 0.5, 0.9}) {
      const Point2 p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      for (auto [dx, dy] : {std::pair{0, 0}, {1, 0}, {0, 1}}) {
        worst = std::max(worst, std::abs(evaluate(m, s.bases, xs, e.tris[0], p, dx, dy)));
      }
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Morley space: zero corner values and zero mean normal derivative per side") {
  for (const char* shape : {"tri-equilateral", "tri-90-60-30"}) {
    Triangulation m = domain_catalog(shape, parse_boundary_spec("M")).mesh;
    m = red_refine(red_refine(m));
    const DiscreteSpace s = build_space(m, parse_boundary_spec("M"));
    const DiscreteSpace v = build_space(m, parse_boundary_spec("V"));
    CHECK(v.reduction.n_free() == v.dofs.size() - 3);
    CHECK(s.reduction.n_free() == v.reduction.n_free() - 3);
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd y(s.reduction.n_free());
    for (int i = 0; i < y.size(); ++i) y[i] = u(rng);
    const Eigen::VectorXd x = s.reduction.expand(y);
    const std::span<const double> xs(x.data(), x.size());
    std::map<int, double> means;
    double size = 0.0;
    const LineRule g = gauss_legendre(6);
    for (int e = 0; e < m.num_edges(); ++e) {
      const Edge& edge = m.edges()[e];
      if (!edge.on_boundary()) continue;
      const EdgeFrame f = m.frame(e);
      const double sign = m.outward_sign(edge.tris[0], e);
      const Point2& a = m.points()[edge.lo];
      const Point2& b = m.points()[edge.hi];
      for (std::size_t q = 0; q < g.points.size(); ++q) {
        const Point2 p{a.x + g.points[q] * (b.x - a.x), a.y + g.points[q] * (b.y - a.y)};
        const double dn = f.normal.x * evaluate(m, s.bases, xs, edge.tris[0], p, 1, 0) +
                          f.normal.y * evaluate(m, s.bases, xs, edge.tris[0], p, 0, 1);
        means[edge.segment] += sign * g.weights[q] * f.length * dn;
        size += g.weights[q] * f.length * std::abs(dn);
      }
    }
    CHECK(means.size() == 3);
    for (const auto& [seg, mean] : means) CHECK(std::abs(mean) < 1e-10 * size);
    for (int c : m.corner_vertices()) CHECK(std::abs(x[s.dofs.vertex_dof(c, kValue)]) < 1e-14);
  }
}

TEST_CASE("evaluate rejects bad arguments") {
  const Triangulation m = domain_catalog("square", parse_boundary_spec("clamped")).mesh;
  const DofMap d = build_dof_map(m);
  const std::vector<ElementBasis> b = element_bases(m, d);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(d.size());
  const std::span<const double> xs(x.data(), x.size());
  CHECK_THROWS_AS(evaluate(m, b, xs, 0, Point2{5.0, 5.0}, 0, 0), Error);
  CHECK_THROWS_AS(evaluate(m, b, xs, 0, Point2{0.5, 0.2}, 3, 2), Error);
}
