#include "biharm/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "biharm/error.hpp"

namespace biharm {

namespace {

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double dist2(const Point2& a, const Point2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return dx * dx + dy * dy;
}

Point2 midpoint(const Point2& a, const Point2& b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

// Longest edge; near-ties (1e-12 relative) go to the smallest opposite vertex.
int longest_edge(const std::vector<Point2>& pts, const std::array<int, 3>& v) {
  std::array<double, 3> len{};
  for (int k = 0; k < 3; ++k) len[k] = dist2(pts[v[k]], pts[v[(k + 1) % 3]]);
  const double longest = *std::max_element(len.begin(), len.end());
  int best = -1;
  for (int k = 0; k < 3; ++k) {
    if (len[k] < longest * (1.0 - 1e-12)) continue;
    if (best < 0 || v[(k + 2) % 3] < v[(best + 2) % 3]) best = k;
  }
  return best;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw Error(ErrorKind::ParseError, "bad number '" + token + "'");
  }
  return value;
}

}  // namespace

char label_code(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::Clamped: return 'C';
    case BoundaryLabel::SimplySupported: return 'S';
    case BoundaryLabel::Free: return 'F';
    case BoundaryLabel::Interior: return 'I';
  }
  return '?';
}

BoundaryLabel label_from_code(char code) {
  switch (code) {
    case 'C': return BoundaryLabel::Clamped;
    case 'S': return BoundaryLabel::SimplySupported;
    case 'F': return BoundaryLabel::Free;
    default: throw Error(ErrorKind::ParseError, std::string("unknown boundary label '") + code + "'");
  }
}

std::string_view to_string(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::Interior: return "Interior";
    case BoundaryLabel::Clamped: return "Clamped";
    case BoundaryLabel::SimplySupported: return "SimplySupported";
    case BoundaryLabel::Free: return "Free";
  }
  return "?";
}

int Triangulation::find_edge(int a, int b) const {
  auto it = edge_lookup_.find(edge_key(a, b));
  return it == edge_lookup_.end() ? -1 : it->second;
}

double Triangulation::area(int t) const {
  const auto& v = tris_[t].v;
  return signed_area(points_[v[0]], points_[v[1]], points_[v[2]]);
}

double Triangulation::diameter(int t) const {
  const auto& v = tris_[t].v;
  double d = 0.0;
  for (int k = 0; k < 3; ++k) d = std::max(d, dist2(points_[v[k]], points_[v[(k + 1) % 3]]));
  return std::sqrt(d);
}

Point2 Triangulation::centroid(int t) const {
  const auto& v = tris_[t].v;
  return {(points_[v[0]].x + points_[v[1]].x + points_[v[2]].x) / 3.0,
          (points_[v[0]].y + points_[v[1]].y + points_[v[2]].y) / 3.0};
}

double Triangulation::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < num_tris(); ++t) sum += area(t);
  return sum;
}

EdgeFrame Triangulation::frame(int e) const {
  const Point2& a = points_[edges_[e].lo];
  const Point2& b = points_[edges_[e].hi];
  EdgeFrame f;
  f.length = std::sqrt(dist2(a, b));
  f.tangent = {(b.x - a.x) / f.length, (b.y - a.y) / f.length};
  f.normal = {-f.tangent.y, f.tangent.x};
  f.midpoint = midpoint(a, b);
  return f;
}

int Triangulation::outward_sign(int t, int e) const {
  // Counterclockwise traversal lo->hi puts the triangle on the left, i.e. on
  // the side of the +90 degree normal, so the outward normal is -normal.
  const auto& v = tris_[t].v;
  for (int k = 0; k < 3; ++k) {
    if (tri_edges_[t][k] == e) return v[k] == edges_[e].lo ? -1 : 1;
  }
  return 0;
}

std::vector<int> Triangulation::corner_vertices() const {
  std::vector<int> first_segment(points_.size(), -2);
  std::vector<char> corner(points_.size(), 0);
  for (const Edge& e : edges_) {
    if (!e.on_boundary()) continue;
    for (int v : {e.lo, e.hi}) {
      if (first_segment[v] == -2) {
        first_segment[v] = e.segment;
      } else if (first_segment[v] != e.segment) {
        corner[v] = 1;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < num_points(); ++v) {
    if (corner[v]) out.push_back(v);
  }
  return out;
}

void Triangulation::validate() const {
  for (int t = 0; t < num_tris(); ++t) {
    if (!(area(t) > 0.0)) throw Error(ErrorKind::NonConforming, "triangle " + std::to_string(t) + " not positively oriented");
  }
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.lo >= edge.hi) throw Error(ErrorKind::NonConforming, "edge orientation");
    if (edge.tris[1] >= 0 && outward_sign(edge.tris[0], e) == outward_sign(edge.tris[1], e)) {
      throw Error(ErrorKind::NonConforming, "overlapping triangles at edge " + std::to_string(e));
    }
    if ((edge.label == BoundaryLabel::Interior) != !edge.on_boundary()) {
      throw Error(ErrorKind::InconsistentLabel, "edge " + std::to_string(e));
    }
  }
  // Hanging vertices: a vertex strictly inside a boundary edge.
  std::vector<int> by_x(points_.size());
  std::iota(by_x.begin(), by_x.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&](int a, int b) { return points_[a].x < points_[b].x; });
  for (const Edge& edge : edges_) {
    if (!edge.on_boundary()) continue;
    const Point2& a = points_[edge.lo];
    const Point2& b = points_[edge.hi];
    const double len2 = dist2(a, b);
    const double tol = 1e-12 * std::sqrt(len2);
    const double xmin = std::min(a.x, b.x) - tol;
    const double xmax = std::max(a.x, b.x) + tol;
    auto it = std::lower_bound(by_x.begin(), by_x.end(), xmin,
                               [&](int p, double x) { return points_[p].x < x; });
    for (; it != by_x.end() && points_[*it].x <= xmax; ++it) {
      const int p = *it;
      if (p == edge.lo || p == edge.hi) continue;
      const Point2& q = points_[p];
      const double cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
      if (std::abs(cross) > tol * std::sqrt(len2)) continue;
      const double s = ((q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y)) / len2;
      if (s > 1e-12 && s < 1.0 - 1e-12) {
        throw Error(ErrorKind::NonConforming, "hanging vertex " + std::to_string(p));
      }
    }
  }
}

Triangulation assemble_triangulation(std::vector<Point2> points, std::vector<Triangle> tris,
                                     std::span<const BoundaryEdgeSpec> boundary,
                                     std::optional<BoundaryLabel> default_label, int level,
                                     bool check_hanging) {
  Triangulation mesh;
  mesh.points_ = std::move(points);
  mesh.tris_ = std::move(tris);
  mesh.level_ = level;
  const int np = mesh.num_points();
  for (const Point2& p : mesh.points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorKind::InvalidSpec, "non-finite coordinate");
  }
  mesh.tri_edges_.resize(mesh.tris_.size());
  mesh.edge_lookup_.reserve(mesh.tris_.size() * 2);
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const Triangle& tri = mesh.tris_[t];
    for (int k = 0; k < 3; ++k) {
      if (tri.v[k] < 0 || tri.v[k] >= np) throw Error(ErrorKind::InvalidSpec, "vertex index out of range");
    }
    if (tri.ref_edge < 0 || tri.ref_edge > 2) throw Error(ErrorKind::InvalidSpec, "bad refinement edge");
    if (tri.v[0] == tri.v[1] || tri.v[1] == tri.v[2] || tri.v[0] == tri.v[2] || !(mesh.area(t) > 0.0)) {
      throw Error(ErrorKind::ZeroArea, "triangle " + std::to_string(t));
    }
    for (int k = 0; k < 3; ++k) {
      const int a = tri.v[k];
      const int b = tri.v[(k + 1) % 3];
      auto [it, inserted] = mesh.edge_lookup_.try_emplace(edge_key(a, b), mesh.num_edges());
      if (inserted) {
        Edge e;
        e.lo = std::min(a, b);
        e.hi = std::max(a, b);
        e.tris = {t, -1};
        mesh.edges_.push_back(e);
      } else {
        Edge& e = mesh.edges_[it->second];
        if (e.tris[1] >= 0) throw Error(ErrorKind::NonConforming, "edge shared by more than two triangles");
        e.tris[1] = t;
      }
      mesh.tri_edges_[t][k] = it->second;
    }
  }
  std::vector<char> labelled(mesh.edges_.size(), 0);
  for (const BoundaryEdgeSpec& spec : boundary) {
    const int e = mesh.find_edge(spec.a, spec.b);
    if (e < 0) throw Error(ErrorKind::InconsistentLabel, "labelled edge does not exist");
    Edge& edge = mesh.edges_[e];
    if (!edge.on_boundary() || spec.label == BoundaryLabel::Interior) {
      throw Error(ErrorKind::InconsistentLabel, "boundary label on interior edge");
    }
    if (labelled[e] && (edge.label != spec.label || edge.segment != spec.segment)) {
      throw Error(ErrorKind::InconsistentLabel, "conflicting labels");
    }
    edge.label = spec.label;
    edge.segment = spec.segment;
    labelled[e] = 1;
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    Edge& edge = mesh.edges_[e];
    if (!edge.on_boundary() || labelled[e]) continue;
    if (!default_label || *default_label == BoundaryLabel::Interior) {
      throw Error(ErrorKind::InconsistentLabel, "unlabelled boundary edge");
    }
    edge.label = *default_label;
    edge.segment = 0;
  }
  if (check_hanging) mesh.validate();
  return mesh;
}

Triangulation build_triangulation(std::vector<Point2> points, std::span<const std::array<int, 3>> tris,
                                  std::span<const BoundaryEdgeSpec> boundary,
                                  std::optional<BoundaryLabel> default_label) {
  std::vector<Triangle> out;
  out.reserve(tris.size());
  for (std::array<int, 3> v : tris) {
    for (int idx : v) {
      if (idx < 0 || idx >= static_cast<int>(points.size())) throw Error(ErrorKind::InvalidSpec, "vertex index out of range");
    }
    if (signed_area(points[v[0]], points[v[1]], points[v[2]]) < 0.0) std::swap(v[1], v[2]);
    out.push_back({v, longest_edge(points, v)});
  }
  return assemble_triangulation(std::move(points), std::move(out), boundary, default_label, 0, true);
}

namespace {

std::vector<BoundaryEdgeSpec> split_boundary(const Triangulation& mesh, const std::vector<int>& mid) {
  std::vector<BoundaryEdgeSpec> boundary;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (!edge.on_boundary()) continue;
    if (mid[e] >= 0) {
      boundary.push_back({edge.lo, mid[e], edge.label, edge.segment});
      boundary.push_back({mid[e], edge.hi, edge.label, edge.segment});
    } else {
      boundary.push_back({edge.lo, edge.hi, edge.label, edge.segment});
    }
  }
  return boundary;
}

}  // namespace

Triangulation nvb_refine(const Triangulation& mesh, std::span<const int> marked) {
  if (marked.empty()) throw Error(ErrorKind::InvalidSpec, "no marked triangles");
  const int nt = mesh.num_tris();
  std::vector<char> edge_marked(mesh.num_edges(), 0);
  for (int t : marked) {
    if (t < 0 || t >= nt) throw Error(ErrorKind::InvalidSpec, "marked index out of range");
    edge_marked[mesh.tri_edge(t, mesh.tris()[t].ref_edge)] = 1;
  }

  // Closure: a triangle with any marked edge must also bisect its refinement
  // edge. Worklist seeded in ascending triangle order.
  std::deque<int> work(static_cast<std::size_t>(nt));
  std::iota(work.begin(), work.end(), 0);
  std::vector<char> queued(nt, 1);
  while (!work.empty()) {
    const int t = work.front();
    work.pop_front();
    queued[t] = 0;
    const auto& te = mesh.tri_edges(t);
    const int ref = te[mesh.tris()[t].ref_edge];
    if (edge_marked[ref]) continue;
    if (!edge_marked[te[0]] && !edge_marked[te[1]] && !edge_marked[te[2]]) continue;
    edge_marked[ref] = 1;
    for (int nb : mesh.edges()[ref].tris) {
      if (nb >= 0 && nb != t && !queued[nb]) {
        queued[nb] = 1;
        work.push_back(nb);
      }
    }
  }

  std::vector<Point2> points = mesh.points();
  std::vector<int> mid(mesh.num_edges(), -1);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!edge_marked[e]) continue;
    mid[e] = static_cast<int>(points.size());
    points.push_back(midpoint(points[mesh.edges()[e].lo], points[mesh.edges()[e].hi]));
  }

  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(nt) * 2);
  // Bisects while the refinement edge is a marked edge of the old mesh; new
  // edges are never marked, which bounds the recursion depth by two.
  auto refine = [&](auto&& self, const Triangle& tri) -> void {
    const int a = tri.v[tri.ref_edge];
    const int b = tri.v[(tri.ref_edge + 1) % 3];
    const int c = tri.v[(tri.ref_edge + 2) % 3];
    const int e = (a < mesh.num_points() && b < mesh.num_points()) ? mesh.find_edge(a, b) : -1;
    if (e < 0 || !edge_marked[e]) {
      tris.push_back(tri);
      return;
    }
    const int m = mid[e];
    self(self, Triangle{{a, m, c}, 2});
    self(self, Triangle{{m, b, c}, 1});
  };
  for (int t = 0; t < nt; ++t) refine(refine, mesh.tris()[t]);

  const auto boundary = split_boundary(mesh, mid);
  return assemble_triangulation(std::move(points), std::move(tris), boundary, std::nullopt,
                                mesh.level() + 1, false);
}

Triangulation red_refine(const Triangulation& mesh) {
  std::vector<Point2> points = mesh.points();
  std::vector<int> mid(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    mid[e] = static_cast<int>(points.size());
    points.push_back(midpoint(points[mesh.edges()[e].lo], points[mesh.edges()[e].hi]));
  }
  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(mesh.num_tris()) * 4);
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const auto& v = mesh.tris()[t].v;
    const auto& te = mesh.tri_edges(t);
    const int m01 = mid[te[0]];
    const int m12 = mid[te[1]];
    const int m20 = mid[te[2]];
    for (std::array<int, 3> child : {std::array<int, 3>{v[0], m01, m20}, std::array<int, 3>{m01, v[1], m12},
                                     std::array<int, 3>{m20, m12, v[2]}, std::array<int, 3>{m01, m12, m20}}) {
      tris.push_back({child, longest_edge(points, child)});
    }
  }
  const auto boundary = split_boundary(mesh, mid);
  return assemble_triangulation(std::move(points), std::move(tris), boundary, std::nullopt,
                                mesh.level() + 1, false);
}

void write_mesh(std::ostream& out, const Triangulation& mesh) {
  out << "vertices " << mesh.num_points() << '\n';
  for (const Point2& p : mesh.points()) out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  out << "triangles " << mesh.num_tris() << '\n';
  for (const Triangle& t : mesh.tris()) {
    out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << t.ref_edge << '\n';
  }
  int nb = 0;
  for (const Edge& e : mesh.edges()) nb += e.on_boundary() ? 1 : 0;
  out << "edges " << nb << '\n';
  for (const Edge& e : mesh.edges()) {
    if (!e.on_boundary()) continue;
    out << e.lo << ' ' << e.hi << ' ' << label_code(e.label) << ' ' << e.segment << '\n';
  }
}

Triangulation read_mesh(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') return std::istringstream(line);
    }
    throw Error(ErrorKind::ParseError, "unexpected end of mesh file");
  };
  auto header = [&](const char* name) {
    auto ss = next_line();
    std::string word;
    long count = -1;
    ss >> word >> count;
    if (word != name || count < 0) throw Error(ErrorKind::ParseError, std::string("expected '") + name + " N'");
    return static_cast<int>(count);
  };

  const int nv = header("vertices");
  std::vector<Point2> points(nv);
  for (auto& p : points) {
    auto ss = next_line();
    std::string xs, ys;
    ss >> xs >> ys;
    p = {parse_double(xs), parse_double(ys)};
  }
  const int nt = header("triangles");
  std::vector<Triangle> tris(nt);
  for (auto& t : tris) {
    auto ss = next_line();
    if (!(ss >> t.v[0] >> t.v[1] >> t.v[2] >> t.ref_edge)) throw Error(ErrorKind::ParseError, "bad triangle line");
  }
  const int ne = header("edges");
  std::vector<BoundaryEdgeSpec> boundary(ne);
  for (auto& b : boundary) {
    auto ss = next_line();
    std::string label;
    if (!(ss >> b.a >> b.b >> label) || label.size() != 1) throw Error(ErrorKind::ParseError, "bad edge line");
    b.label = label_from_code(label[0]);
    if (!(ss >> b.segment)) b.segment = 0;
  }
  return assemble_triangulation(std::move(points), std::move(tris), boundary, std::nullopt, 0, true);
}

}  // namespace biharm
