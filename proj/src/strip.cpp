#include "arbor/strip.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace arbor {

namespace {

/// Sublattice `a` of cell (x, y) joins sublattice `b` of cell (x + dx, y + dy).
struct CellEdge {
  std::size_t a;
  std::size_t b;
  int dx;
  int dy;
};

// Unit cells. x is longitudinal, y transverse; every cell edge has dx >= 0.
//
// sq      one site, east and north bonds.
// tri     sq plus the north-east diagonal.
// hc      brick cell A(0), B(1): A-B, B-A(east), B-A(north).
// kag     up-triangle A(0), B(1), C(2); down-triangles close through
//         B-A(east), C-A(north), B-C(east, south).
// t48     square W(0) N(1) E(2) S(3); octagons close through E-W(east), N-S(north).
// t3342   rows s0 (bottom) and s1 (top) with horizontal bonds; s0-s1 is the
//         square row, s1 to s0 of the cell above and its east neighbour is the
//         triangle row.
// t32434  square NE(0) NW(1) SW(2) SE(3) per cell; the second square joins
//         NE, NW(east), SW(north-east), SE(north) of four cells; one diagonal
//         per gap between squares completes the triangles.
constexpr std::array kSquareCell{CellEdge{0, 0, 1, 0}, CellEdge{0, 0, 0, 1}};
constexpr std::array kTriangularCell{CellEdge{0, 0, 1, 0}, CellEdge{0, 0, 0, 1}, CellEdge{0, 0, 1, 1}};
constexpr std::array kHoneycombCell{CellEdge{0, 1, 0, 0}, CellEdge{1, 0, 1, 0}, CellEdge{1, 0, 0, 1}};
constexpr std::array kKagomeCell{CellEdge{0, 1, 0, 0}, CellEdge{1, 2, 0, 0}, CellEdge{2, 0, 0, 0},
                                 CellEdge{1, 0, 1, 0}, CellEdge{2, 0, 0, 1}, CellEdge{1, 2, 1, -1}};
constexpr std::array k488Cell{CellEdge{0, 1, 0, 0}, CellEdge{1, 2, 0, 0}, CellEdge{2, 3, 0, 0},
                              CellEdge{3, 0, 0, 0}, CellEdge{2, 0, 1, 0}, CellEdge{1, 3, 0, 1}};
constexpr std::array k33344Cell{CellEdge{0, 0, 1, 0}, CellEdge{1, 1, 1, 0}, CellEdge{0, 1, 0, 0},
                                CellEdge{1, 0, 0, 1}, CellEdge{1, 0, 1, 1}};
constexpr std::array k33434Cell{CellEdge{0, 1, 0, 0}, CellEdge{1, 2, 0, 0}, CellEdge{2, 3, 0, 0},
                                CellEdge{3, 0, 0, 0}, CellEdge{0, 1, 1, 0}, CellEdge{1, 2, 0, 1},
                                CellEdge{3, 2, 1, 0}, CellEdge{0, 3, 0, 1}, CellEdge{0, 2, 1, 0},
                                CellEdge{1, 3, 0, 1}};

std::span<const CellEdge> cell_edges(Lattice lattice) {
  switch (lattice) {
    case Lattice::kSquare: return kSquareCell;
    case Lattice::kTriangular: return kTriangularCell;
    case Lattice::kHoneycomb: return kHoneycombCell;
    case Lattice::kKagome: return kKagomeCell;
    case Lattice::k4_8_8: return k488Cell;
    case Lattice::k3_3_3_4_4: return k33344Cell;
    case Lattice::k3_3_4_3_4: return k33434Cell;
  }
  throw std::logic_error("unknown lattice");
}

constexpr std::array kLattices{
    LatticeInfo{Lattice::k4_8_8, "t48", "4.8.8", "(4.8^2)", 3, 4, 4},
    LatticeInfo{Lattice::kHoneycomb, "hc", "6.6.6", "(6^3)=hc", 3, 6, 2},
    LatticeInfo{Lattice::kKagome, "kag", "3.6.3.6", "(3.6.3.6)", 4, 3, 3},
    LatticeInfo{Lattice::kSquare, "sq", "4.4.4.4", "(4^4)=sq", 4, 4, 1},
    LatticeInfo{Lattice::k3_3_3_4_4, "t3342", "3.3.3.4.4", "(3^3.4^2)", 5, 3, 2},
    LatticeInfo{Lattice::k3_3_4_3_4, "t32434", "3.3.4.3.4", "(3^2.4.3.4)", 5, 3, 4},
    LatticeInfo{Lattice::kTriangular, "tri", "3.3.3.3.3.3", "(3^6)=tri", 6, 3, 1},
};

constexpr std::array kLatticeOrder{Lattice::k4_8_8, Lattice::kHoneycomb, Lattice::kKagome, Lattice::kSquare,
                                   Lattice::k3_3_3_4_4, Lattice::k3_3_4_3_4, Lattice::kTriangular};

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// "4.8^2" -> "4.8.8"; "(3^3.4^2)" -> "3.3.3.4.4".
std::string expand_polygons(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c == '(' || c == ')' || c == ' ') continue;
    s.push_back(c == '*' || c == 'x' ? '.' : c);
  }
  std::string out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t dot = s.find('.', pos);
    if (dot == std::string::npos) dot = s.size();
    std::string part = s.substr(pos, dot - pos);
    std::size_t repeat = 1;
    if (auto caret = part.find('^'); caret != std::string::npos) {
      repeat = std::stoul(part.substr(caret + 1));
      part = part.substr(0, caret);
    }
    for (std::size_t i = 0; i < repeat; ++i) out += (out.empty() ? "" : ".") + part;
    pos = dot + 1;
  }
  return out;
}

bool same_cycle(const std::string& a, const std::string& b) {
  // Vertex configurations are equal up to rotation and reflection.
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t dot = std::min(s.find('.', pos), s.size());
      parts.push_back(s.substr(pos, dot - pos));
      pos = dot + 1;
    }
    return parts;
  };
  auto pa = split(a);
  auto pb = split(b);
  if (pa.size() != pb.size()) return false;
  for (int flip = 0; flip < 2; ++flip) {
    for (std::size_t r = 0; r < pb.size(); ++r) {
      std::rotate(pb.begin(), pb.begin() + 1, pb.end());
      if (pa == pb) return true;
    }
    std::reverse(pb.begin(), pb.end());
  }
  return false;
}

std::size_t wrap(long long coord, std::size_t extent) {
  const auto e = static_cast<long long>(extent);
  return static_cast<std::size_t>(((coord % e) + e) % e);
}

}  // namespace

const LatticeInfo& lattice_info(Lattice lattice) {
  for (const auto& info : kLattices) {
    if (info.id == lattice) return info;
  }
  throw std::logic_error("unknown lattice");
}

std::span<const Lattice> all_lattices() { return kLatticeOrder; }

Lattice parse_lattice(std::string_view name) {
  const std::string lower = lowercase(name);
  for (const auto& info : kLattices) {
    if (lower == info.mnemonic) return info.id;
  }
  if (lower == "kagome") return Lattice::kKagome;
  if (lower == "t33344") return Lattice::k3_3_3_4_4;
  if (lower == "t33434") return Lattice::k3_3_4_3_4;
  try {
    const std::string polygons = expand_polygons(lower);
    for (const auto& info : kLattices) {
      if (same_cycle(polygons, std::string(info.polygons))) return info.id;
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("unknown lattice '" + std::string(name) + "'");
}

Boundary parse_boundary(std::string_view name) {
  const std::string lower = lowercase(name);
  if (lower == "free" || lower == "f") return Boundary::kFree;
  if (lower == "periodic" || lower == "p") return Boundary::kPeriodic;
  throw std::invalid_argument("unknown boundary condition '" + std::string(name) + "'");
}

std::string_view to_string(Boundary bc) { return bc == Boundary::kFree ? "free" : "periodic"; }

void validate(const StripSpec& spec) {
  if (spec.width < 1 || spec.length < 1) throw std::invalid_argument("strip extents must be at least 1");
  if (spec.bc_t == Boundary::kPeriodic && spec.width == 1) {
    throw std::invalid_argument("periodic transverse boundary needs width >= 2");
  }
  if (spec.bc_l == Boundary::kPeriodic && spec.length == 1) {
    throw std::invalid_argument("periodic longitudinal boundary needs length >= 2");
  }
}

Multigraph build_strip(const StripSpec& spec) {
  validate(spec);
  const std::size_t c = lattice_info(spec.lattice).cell_vertices;
  auto index = [&](std::size_t x, std::size_t y, std::size_t s) {
    return static_cast<Vertex>((x * spec.width + y) * c + s);
  };
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < spec.length; ++x) {
    for (std::size_t y = 0; y < spec.width; ++y) {
      for (const CellEdge& ce : cell_edges(spec.lattice)) {
        const long long x2 = static_cast<long long>(x) + ce.dx;
        const long long y2 = static_cast<long long>(y) + ce.dy;
        const bool x_out = x2 < 0 || x2 >= static_cast<long long>(spec.length);
        const bool y_out = y2 < 0 || y2 >= static_cast<long long>(spec.width);
        if (x_out && spec.bc_l == Boundary::kFree) continue;
        if (y_out && spec.bc_t == Boundary::kFree) continue;
        edges.push_back({index(x, y, ce.a), index(wrap(x2, spec.length), wrap(y2, spec.width), ce.b)});
      }
    }
  }
  return Multigraph(c * spec.width * spec.length, std::move(edges));
}

ColumnDecomposition column_decomposition(const StripSpec& spec) {
  StripSpec column = spec;
  column.length = 1;
  column.bc_l = Boundary::kFree;
  validate(column);
  const std::size_t c = lattice_info(spec.lattice).cell_vertices;
  ColumnDecomposition out;
  out.nu = c * spec.width;
  for (std::size_t y = 0; y < spec.width; ++y) {
    for (const CellEdge& ce : cell_edges(spec.lattice)) {
      const long long y2 = static_cast<long long>(y) + ce.dy;
      if ((y2 < 0 || y2 >= static_cast<long long>(spec.width)) && spec.bc_t == Boundary::kFree) continue;
      const Edge e{static_cast<Vertex>(y * c + ce.a), static_cast<Vertex>(wrap(y2, spec.width) * c + ce.b)};
      (ce.dx == 0 ? out.intra : out.inter).push_back(e);
    }
  }
  return out;
}

Multigraph glue_columns(const ColumnDecomposition& columns, std::size_t length) {
  std::vector<Edge> edges;
  const auto nu = static_cast<Vertex>(columns.nu);
  for (std::size_t x = 0; x < length; ++x) {
    const auto base = static_cast<Vertex>(x * columns.nu);
    for (const Edge& e : columns.intra) edges.push_back({base + e.u, base + e.v});
    if (x + 1 < length) {
      for (const Edge& e : columns.inter) edges.push_back({base + e.u, base + nu + e.v});
    }
  }
  return Multigraph(columns.nu * length, std::move(edges));
}

LatticeCheck verify_lattice(const StripSpec& spec, const Multigraph& g) {
  const LatticeInfo& info = lattice_info(spec.lattice);
  const std::size_t c = info.cell_vertices;
  LatticeCheck report;
  auto fail = [&](std::string message) { report.failures.push_back(std::move(message)); };

  const auto degrees = g.degrees();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const std::size_t cell = v / c;
    const std::size_t x = cell / spec.width;
    const std::size_t y = cell % spec.width;
    const bool x_edge = spec.bc_l == Boundary::kFree && (x == 0 || x + 1 == spec.length);
    const bool y_edge = spec.bc_t == Boundary::kFree && (y == 0 || y + 1 == spec.width);
    if (x_edge || y_edge) continue;
    ++report.interior_vertices;
    if (degrees[v] != info.degree) {
      if (report.interior_degree_ok) fail("interior vertex " + std::to_string(v) + " has degree " + std::to_string(degrees[v]));
      report.interior_degree_ok = false;
    }
  }

  report.fully_periodic = spec.bc_t == Boundary::kPeriodic && spec.bc_l == Boundary::kPeriodic;
  if (report.fully_periodic) {
    const GraphStats s = stats(g);
    report.regular_ok = s.regular() && s.max_degree == info.degree;
    if (!report.regular_ok) fail("graph is not " + std::to_string(info.degree) + "-regular");
    report.edge_count_ok = 2 * s.e == s.n * info.degree;
    if (!report.edge_count_ok) fail("e = " + std::to_string(s.e) + " but n*degree/2 = " + std::to_string(s.n * info.degree / 2));
    if (spec.width >= 4 && spec.length >= 4) {
      report.girth_checked = true;
      report.girth_ok = s.girth == info.girth;
      if (!report.girth_ok) fail("girth " + (s.girth ? std::to_string(*s.girth) : std::string("inf")) + ", expected " + std::to_string(info.girth));
    }
  }
  return report;
}

}  // namespace arbor
