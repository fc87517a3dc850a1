#include "biharm/estimator.hpp"

#include <cmath>
#include <ostream>

#include "biharm/error.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/parallel.hpp"

namespace biharm {

namespace {

// Derivatives of one triangle's polynomial needed by the indicators.
struct Jet {
  LocalPolynomial u;
  LocalPolynomial ux;
  LocalPolynomial uy;
  LocalPolynomial uxx;
  LocalPolynomial uxy;
  LocalPolynomial uyy;
  LocalPolynomial uxxx;
  LocalPolynomial uxxy;
  LocalPolynomial uxyy;
  LocalPolynomial uyyy;
  LocalPolynomial lap;
  LocalPolynomial bilap;

  explicit Jet(const LocalPolynomial& p)
      : u(p),
        ux(p.derivative(1, 0)),
        uy(p.derivative(0, 1)),
        uxx(p.derivative(2, 0)),
        uxy(p.derivative(1, 1)),
        uyy(p.derivative(0, 2)),
        uxxx(p.derivative(3, 0)),
        uxxy(p.derivative(2, 1)),
        uxyy(p.derivative(1, 2)),
        uyyy(p.derivative(0, 3)) {
    lap = uxx;
    lap.coeffs += uyy.coeffs;
    bilap = p.derivative(4, 0);
    bilap.coeffs += 2.0 * p.derivative(2, 2).coeffs + p.derivative(0, 4).coeffs;
  }

  double normal_normal(const Point2& p, const Point2& n) const {
    return n.x * n.x * uxx.eval(p) + 2.0 * n.x * n.y * uxy.eval(p) + n.y * n.y * uyy.eval(p);
  }

  double normal_laplace(const Point2& p, const Point2& n) const {
    return n.x * (uxxx.eval(p) + uxyy.eval(p)) + n.y * (uxxy.eval(p) + uyyy.eval(p));
  }

  // d^3 u / dt dt dn.
  double tangent_tangent_normal(const Point2& p, const Point2& t, const Point2& n) const {
    const double d[4] = {uxxx.eval(p), uxxy.eval(p), uxyy.eval(p), uyyy.eval(p)};
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          const double w = (i ? t.y : t.x) * (j ? t.y : t.x) * (k ? n.y : n.x);
          sum += w * d[i + j + k];
        }
      }
    }
    return sum;
  }

  double normal(const Point2& p, const Point2& n) const { return n.x * ux.eval(p) + n.y * uy.eval(p); }
};

struct EdgeTerms {
  double normal_normal = 0.0;
  double normal_laplace = 0.0;
};

Point2 map_point(const Triangulation& mesh, int t, const std::array<double, 2>& bary) {
  const auto& v = mesh.tris()[t].v;
  const Point2& a = mesh.points()[v[0]];
  const Point2& b = mesh.points()[v[1]];
  const Point2& c = mesh.points()[v[2]];
  return {a.x + bary[0] * (b.x - a.x) + bary[1] * (c.x - a.x), a.y + bary[0] * (b.y - a.y) + bary[1] * (c.y - a.y)};
}

double volume_term(const Triangulation& mesh, int t, const Jet& jet, double lambda, MassForm form) {
  const QuadratureRule& rule = triangle_quadrature(10);
  const double area = mesh.area(t);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const Point2 p = map_point(mesh, t, rule.points[q]);
    const double source = form == MassForm::L2 ? lambda * jet.u.eval(p) : -lambda * jet.lap.eval(p);
    const double r = source - jet.bilap.eval(p);
    sum += rule.weights[q] * r * r;
  }
  return area * area * area * sum;
}

EdgeTerms edge_terms(const Triangulation& mesh, int e, std::span<const Jet> jets, double lambda, MassForm form) {
  const Edge& edge = mesh.edges()[e];
  EdgeTerms out;
  if (edge.label == BoundaryLabel::Clamped) return out;
  const EdgeFrame f = mesh.frame(e);
  const Point2& a = mesh.points()[edge.lo];
  const Point2& b = mesh.points()[edge.hi];
  const LineRule& rule = edge_quadrature();
  if (edge.on_boundary()) {
    const int t = edge.tris[0];
    const double sign = mesh.outward_sign(t, e);
    const Point2 n{sign * f.normal.x, sign * f.normal.y};
    const Jet& jet = jets[t];
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const double s = rule.points[q];
      const Point2 p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      const double nn = jet.normal_normal(p, n);
      out.normal_normal += rule.weights[q] * nn * nn;
      if (edge.label == BoundaryLabel::Free) {
        double trace = jet.tangent_tangent_normal(p, f.tangent, n) + jet.normal_laplace(p, n);
        if (form == MassForm::Gradient) trace += lambda * jet.normal(p, n);
        out.normal_laplace += rule.weights[q] * trace * trace;
      }
    }
  } else {
    // Plus side: the triangle whose outward normal is the global normal.
    const int plus = mesh.outward_sign(edge.tris[0], e) > 0 ? edge.tris[0] : edge.tris[1];
    const int minus = plus == edge.tris[0] ? edge.tris[1] : edge.tris[0];
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const double s = rule.points[q];
      const Point2 p{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      const double nn = jets[plus].normal_normal(p, f.normal) - jets[minus].normal_normal(p, f.normal);
      const double nl = jets[plus].normal_laplace(p, f.normal) - jets[minus].normal_laplace(p, f.normal);
      out.normal_normal += rule.weights[q] * nn * nn;
      out.normal_laplace += rule.weights[q] * nl * nl;
    }
  }
  out.normal_normal *= f.length;
  out.normal_laplace *= f.length;
  return out;
}

}  // namespace

double EstimatorReport::total_squared() const {
  double sum = 0.0;
  for (double v : eta2) sum += v;
  return sum;
}

EstimatorReport estimate_polynomials(const Triangulation& mesh, std::span<const LocalPolynomial> locals,
                                     double lambda, MassForm form, int threads) {
  const int nt = mesh.num_tris();
  if (static_cast<int>(locals.size()) != nt) {
    throw Error(ErrorKind::DimensionMismatch, "one local polynomial per triangle required");
  }
  std::vector<Jet> jets;
  jets.reserve(nt);
  for (const LocalPolynomial& p : locals) jets.emplace_back(p);

  std::vector<EdgeTerms> edges(mesh.num_edges());
  parallel_for(mesh.num_edges(), threads, [&](int e) { edges[e] = edge_terms(mesh, e, jets, lambda, form); });

  EstimatorReport report;
  report.eta2.resize(nt);
  report.volume.resize(nt);
  report.normal_normal.assign(nt, 0.0);
  report.normal_laplace.assign(nt, 0.0);
  parallel_for(nt, threads, [&](int t) {
    const double area = mesh.area(t);
    report.volume[t] = volume_term(mesh, t, jets[t], lambda, form);
    double nn = 0.0;
    double nl = 0.0;
    for (int e : mesh.tri_edges(t)) {
      nn += edges[e].normal_normal;
      nl += edges[e].normal_laplace;
    }
    report.normal_normal[t] = std::sqrt(area) * nn;
    report.normal_laplace[t] = area * std::sqrt(area) * nl;
    report.eta2[t] = report.volume[t] + report.normal_normal[t] + report.normal_laplace[t];
  });
  return report;
}

EstimatorReport local_estimator(const Triangulation& mesh, const DofMap& dofs, std::span<const ElementBasis> bases,
                                std::span<const double> u, double lambda, MassForm form, int threads) {
  if (static_cast<int>(u.size()) != dofs.size() || static_cast<int>(bases.size()) != mesh.num_tris()) {
    throw Error(ErrorKind::InconsistentPair, "vector of size " + std::to_string(u.size()) + " for a space of dimension " +
                                                 std::to_string(dofs.size()));
  }
  std::vector<LocalPolynomial> locals(mesh.num_tris());
  for (int t = 0; t < mesh.num_tris(); ++t) locals[t] = bases[t].local(u);
  return estimate_polynomials(mesh, locals, lambda, form, threads);
}

double estimator_total(const EstimatorReport& report) { return std::sqrt(report.total_squared()); }

void write_estimator_csv(std::ostream& out, const EstimatorReport& report) {
  out << "tri_index,eta2,vol_term,nu_nu_term,nu_lap_term\n";
  const auto old = out.precision(17);
  for (std::size_t t = 0; t < report.eta2.size(); ++t) {
    out << t << ',' << report.eta2[t] << ',' << report.volume[t] << ',' << report.normal_normal[t] << ','
        << report.normal_laplace[t] << '\n';
  }
  out.precision(old);
}

}  // namespace biharm
