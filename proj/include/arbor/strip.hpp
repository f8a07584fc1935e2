#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/graph.hpp"

namespace arbor {

/// The seven Archimedean lattices with tabulated growth constants, in
/// order of increasing degree.
enum class Lattice { k4_8_8, kHoneycomb, kKagome, kSquare, k3_3_3_4_4, k3_3_4_3_4, kTriangular };

struct LatticeInfo {
  Lattice id;
  std::string_view mnemonic;  // "sq", "t48", ...
  std::string_view polygons;  // "4.8.8"
  std::string_view display;   // "(4.8^2)"
  std::size_t degree;
  std::size_t girth;
  std::size_t cell_vertices;
};

const LatticeInfo& lattice_info(Lattice lattice);
std::span<const Lattice> all_lattices();

/// Accepts mnemonics (sq, tri, hc, kag, t48, t3342, t32434), dotted polygon
/// strings ("4.8.8", "3.3.4.3.4") and exponent forms ("4.8^2", "3^6").
/// Throws std::invalid_argument on anything else.
Lattice parse_lattice(std::string_view name);

enum class Boundary { kFree, kPeriodic };

Boundary parse_boundary(std::string_view name);
std::string_view to_string(Boundary bc);

/// Strip of `width` cells transversely and `length` cells longitudinally.
struct StripSpec {
  Lattice lattice = Lattice::kSquare;
  std::size_t width = 1;
  std::size_t length = 1;
  Boundary bc_t = Boundary::kFree;
  Boundary bc_l = Boundary::kFree;
};

/// Throws std::invalid_argument for zero extents or periodic wrap of extent 1.
void validate(const StripSpec& spec);

/// Vertex (x, y, s) of cell column x, cell row y, sublattice s has index
/// (x * width + y) * cell_vertices + s.
Multigraph build_strip(const StripSpec& spec);

/// One longitudinal period. Column vertices are numbered locally
/// y * cell_vertices + s; `inter` edges run from column x (first endpoint)
/// to column x + 1 (second endpoint).
struct ColumnDecomposition {
  std::size_t nu = 0;
  std::vector<Edge> intra;
  std::vector<Edge> inter;
};

ColumnDecomposition column_decomposition(const StripSpec& spec);

/// Glues `length` copies of a column with free longitudinal ends.
Multigraph glue_columns(const ColumnDecomposition& columns, std::size_t length);

struct LatticeCheck {
  std::size_t interior_vertices = 0;
  bool interior_degree_ok = true;
  bool fully_periodic = false;
  bool regular_ok = true;
  bool edge_count_ok = true;
  bool girth_checked = false;
  bool girth_ok = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Degree, regularity, e = n*degree/2 and girth against the lattice
/// reference data. Girth is only checked on fully periodic strips with both
/// extents at least 4.
LatticeCheck verify_lattice(const StripSpec& spec, const Multigraph& g);

}  // namespace arbor
