#include "biharm/domains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "biharm/error.hpp"

namespace biharm {

namespace {

using Tri = std::array<Point2, 3>;

struct RawMesh {
  std::vector<Point2> points;
  std::vector<std::array<int, 3>> tris;
};

RawMesh from_coordinates(const std::vector<Tri>& tris) {
  RawMesh raw;
  std::map<std::pair<double, double>, int> index;
  for (const Tri& t : tris) {
    std::array<int, 3> v{};
    for (int k = 0; k < 3; ++k) {
      auto [it, inserted] = index.try_emplace({t[k].x, t[k].y}, static_cast<int>(raw.points.size()));
      if (inserted) raw.points.push_back(t[k]);
      v[k] = it->second;
    }
    raw.tris.push_back(v);
  }
  return raw;
}

// Unit squares [x,x+1]x[y,y+1] split along the diagonal (x,y)-(x+1,y+1).
std::vector<Tri> split_cells(const std::vector<std::pair<double, double>>& cells) {
  std::vector<Tri> out;
  for (auto [x, y] : cells) {
    out.push_back({Point2{x, y}, Point2{x + 1, y}, Point2{x + 1, y + 1}});
    out.push_back({Point2{x, y}, Point2{x + 1, y + 1}, Point2{x, y + 1}});
  }
  return out;
}

RawMesh raw_domain(std::string_view name) {
  if (name == "square") {
    return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}}};
  }
  if (name == "lshape") {
    // Every unit square is cut by the diagonal through the reentrant corner.
    return {{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}},
            {{3, 4, 6}, {4, 7, 6}, {0, 1, 4}, {0, 4, 3}, {1, 2, 4}, {2, 5, 4}}};
  }
  // Seven right-isosceles triangles with legs 2 on the lines x, y odd and
  // the diagonals x - y = 0 mod 4, x + y = 2 mod 4.
  if (name == "drum2") {
    return from_coordinates({{Point2{-1, -1}, Point2{1, -1}, Point2{1, 1}},
                             {Point2{1, -3}, Point2{3, -1}, Point2{1, -1}},
                             {Point2{1, -1}, Point2{3, -1}, Point2{1, 1}},
                             {Point2{3, -1}, Point2{3, 1}, Point2{1, 1}},
                             {Point2{1, 1}, Point2{3, 1}, Point2{3, 3}},
                             {Point2{3, 1}, Point2{5, 1}, Point2{3, 3}},
                             {Point2{5, 1}, Point2{5, 3}, Point2{3, 3}}});
  }
  if (name == "drum1") {
    return from_coordinates({{Point2{3, -1}, Point2{3, 1}, Point2{1, 1}},
                             {Point2{1, 1}, Point2{3, 1}, Point2{3, 3}},
                             {Point2{3, 1}, Point2{5, 1}, Point2{3, 3}},
                             {Point2{5, 1}, Point2{5, 3}, Point2{3, 3}},
                             {Point2{5, 1}, Point2{7, 1}, Point2{7, 3}},
                             {Point2{5, 1}, Point2{7, 3}, Point2{5, 3}},
                             {Point2{5, 3}, Point2{7, 3}, Point2{5, 5}}});
  }
  if (name == "rect-hole") {
    std::vector<std::pair<double, double>> cells;
    for (int y = -1; y < 4; ++y) {
      for (int x = -1; x < 3; ++x) {
        if (x == 0 && y == 0) continue;
        cells.emplace_back(x, y);
      }
    }
    return from_coordinates(split_cells(cells));
  }
  if (name == "tri-equilateral") {
    return {{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}, {{0, 1, 2}}};
  }
  if (name == "tri-right-isosceles") {
    return {{{0, 0}, {1, 0}, {0.5, 0.5}}, {{0, 1, 2}}};
  }
  if (name == "tri-90-60-30") {
    return {{{0, 0}, {1, 0}, {0.25, std::sqrt(3.0) / 4.0}}, {{0, 1, 2}}};
  }
  throw Error(ErrorKind::UnknownDomain, std::string(name));
}

struct BoundaryLoops {
  std::vector<BoundaryEdgeSpec> edges;  // label filled in later
  std::vector<int> edge_component;      // 0 outer, 1 inner
};

// Walks every boundary loop counterclockwise (with respect to the domain),
// splits it into maximal straight segments and classifies loops by the sign
// of their enclosed area.
BoundaryLoops trace_boundary(const Triangulation& mesh) {
  const auto& pts = mesh.points();
  std::map<int, std::pair<int, int>> next;  // vertex -> (next vertex, edge)
  for (int t = 0; t < mesh.num_tris(); ++t) {
    const auto& v = mesh.tris()[t].v;
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.tri_edge(t, k);
      if (mesh.edges()[e].on_boundary()) next[v[k]] = {v[(k + 1) % 3], e};
    }
  }
  BoundaryLoops out;
  std::vector<char> done(mesh.num_edges(), 0);
  int segment = 0;
  for (const auto& [start, unused] : next) {
    if (done[next[start].second]) continue;
    std::vector<int> loop;
    int v = start;
    do {
      loop.push_back(v);
      done[next[v].second] = 1;
      v = next[v].first;
    } while (v != start);
    const std::size_t n = loop.size();
    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = pts[loop[i]];
      const Point2& b = pts[loop[(i + 1) % n]];
      area2 += a.x * b.y - b.x * a.y;
    }
    const int component = area2 > 0.0 ? 0 : 1;
    auto direction = [&](std::size_t i) {
      const Point2& a = pts[loop[i % n]];
      const Point2& b = pts[loop[(i + 1) % n]];
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      return Point2{(b.x - a.x) / len, (b.y - a.y) / len};
    };
    auto is_corner = [&](std::size_t i) {  // loop[i] between edges i-1 and i
      const Point2 d0 = direction(i + n - 1);
      const Point2 d1 = direction(i);
      return std::abs(d0.x * d1.y - d0.y * d1.x) > 1e-10;
    };
    std::size_t first = 0;
    while (first < n && !is_corner(first)) ++first;
    if (first == n) throw Error(ErrorKind::InvalidSpec, "boundary loop without corners");
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = (first + i) % n;
      if (i > 0 && is_corner(idx)) ++segment;
      out.edges.push_back({loop[idx], loop[(idx + 1) % n], BoundaryLabel::Free, segment});
      out.edge_component.push_back(component);
    }
    ++segment;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

BoundaryLabel parse_label(std::string_view word) {
  const std::string w = lower(word);
  if (w == "clamped" || w == "c") return BoundaryLabel::Clamped;
  if (w == "simply-supported" || w == "simply_supported" || w == "s") return BoundaryLabel::SimplySupported;
  if (w == "free" || w == "f") return BoundaryLabel::Free;
  throw Error(ErrorKind::InvalidBoundarySpec, "unknown boundary condition '" + std::string(word) + "'");
}

std::string label_word(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::Clamped: return "clamped";
    case BoundaryLabel::SimplySupported: return "simply-supported";
    case BoundaryLabel::Free: return "free";
    case BoundaryLabel::Interior: break;
  }
  return "interior";
}

}  // namespace

BoundarySpec parse_boundary_spec(std::string_view text) {
  BoundarySpec spec;
  const std::string t = lower(text);
  if (t == "v" || t == "vertex") {
    spec.components = {{"*", BoundaryLabel::Free}};
    spec.corner_values = true;
    return spec;
  }
  if (t == "m" || t == "morley") {
    spec.components = {{"*", BoundaryLabel::Free}};
    spec.corner_values = true;
    spec.edge_means = true;
    return spec;
  }
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      spec.components.emplace_back("*", parse_label(item));
    } else {
      spec.components.emplace_back(lower(item.substr(0, eq)), parse_label(item.substr(eq + 1)));
    }
  }
  if (spec.components.empty()) throw Error(ErrorKind::InvalidBoundarySpec, "empty boundary specification");
  return spec;
}

std::string format_boundary_spec(const BoundarySpec& spec) {
  if (spec.edge_means) return "M";
  if (spec.corner_values) return "V";
  std::string out;
  for (const auto& [name, label] : spec.components) {
    if (!out.empty()) out += ',';
    out += name == "*" ? label_word(label) : name + "=" + label_word(label);
  }
  return out;
}

const std::vector<std::string>& domain_names() {
  static const std::vector<std::string> names{"square",    "lshape",          "drum1",
                                              "drum2",     "rect-hole",       "tri-equilateral",
                                              "tri-right-isosceles", "tri-90-60-30"};
  return names;
}

BoundarySpec default_boundary(std::string_view name) {
  if (name == "rect-hole") return parse_boundary_spec("outer=free,inner=clamped");
  if (name == "drum1" || name == "drum2") return parse_boundary_spec("simply-supported");
  raw_domain(name);  // validates the name
  return parse_boundary_spec("clamped");
}

double domain_area(std::string_view name) {
  if (name == "square") return 1.0;
  if (name == "lshape") return 3.0;
  if (name == "drum1" || name == "drum2") return 14.0;
  if (name == "rect-hole") return 19.0;
  if (name == "tri-equilateral") return std::sqrt(3.0) / 4.0;
  if (name == "tri-right-isosceles") return 0.25;
  if (name == "tri-90-60-30") return std::sqrt(3.0) / 8.0;
  throw Error(ErrorKind::UnknownDomain, std::string(name));
}

Domain domain_catalog(std::string_view name, const BoundarySpec& bc) {
  RawMesh raw = raw_domain(name);
  const Triangulation provisional = build_triangulation(raw.points, raw.tris, {}, BoundaryLabel::Free);
  BoundaryLoops loops = trace_boundary(provisional);
  const bool has_inner = std::find(loops.edge_component.begin(), loops.edge_component.end(), 1) !=
                         loops.edge_component.end();

  std::array<std::optional<BoundaryLabel>, 2> labels;
  for (const auto& [component, label] : bc.components) {
    if (component == "*") {
      labels = {label, label};
    } else if (component == "outer") {
      labels[0] = label;
    } else if (component == "inner" && has_inner) {
      labels[1] = label;
    } else {
      throw Error(ErrorKind::InvalidBoundarySpec,
                  "domain '" + std::string(name) + "' has no boundary component '" + component + "'");
    }
  }
  if (!labels[0] || (has_inner && !labels[1])) {
    throw Error(ErrorKind::InvalidBoundarySpec, "boundary component without condition");
  }
  for (std::size_t i = 0; i < loops.edges.size(); ++i) loops.edges[i].label = *labels[loops.edge_component[i]];

  Domain domain;
  domain.name = std::string(name);
  domain.bc = bc;
  domain.mesh = build_triangulation(std::move(raw.points), raw.tris, loops.edges);
  return domain;
}

}  // namespace biharm
