#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace arbor {

using Vertex = std::uint32_t;
using EdgeId = std::size_t;

/// One edge occurrence. `u == v` is a self-loop.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph on vertices 0..n-1. Parallel edges and loops are
/// distinct occurrences; edge ids are positions in `edges()` and are only
/// stable within one value.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const;

  /// Loops count twice.
  std::size_t degree(Vertex v) const;
  std::vector<std::size_t> degrees() const;
  std::size_t num_loops() const;

  /// Equality of edge multisets (edge order and endpoint order ignored).
  friend bool operator==(const Multigraph& a, const Multigraph& b);

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Throws std::out_of_range if an endpoint is not below n.
Multigraph build_graph(std::size_t n, std::span<const Edge> edges);

struct GraphStats {
  std::size_t n = 0;
  std::size_t e = 0;
  std::size_t components = 0;
  std::size_t cycle_rank = 0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  /// nullopt for forests (infinite girth).
  std::optional<std::size_t> girth;

  bool regular() const { return min_degree == max_degree; }
};

GraphStats stats(const Multigraph& g);
std::size_t count_components(const Multigraph& g);

/// Shortest cycle length; a loop is 1 and a parallel pair is 2.
std::optional<std::size_t> girth(const Multigraph& g);

Multigraph delete_edge(const Multigraph& g, EdgeId id);

/// Merges the endpoints of a non-loop edge into the smaller label and shifts
/// higher labels down by one. Other copies of the same pair become loops.
/// Throws std::invalid_argument for a loop.
Multigraph contract_edge(const Multigraph& g, EdgeId id);

/// C_n; n = 1 is a single loop and n = 2 a doubled edge.
Multigraph cycle_graph(std::size_t n);

/// Attaches `loops` loops to every vertex (C_{n,ml} when applied to C_n).
Multigraph with_loops(const Multigraph& g, std::size_t loops);

/// Text format: "n e" on the first line, then e lines "u v".
Multigraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Multigraph& g);

}  // namespace arbor
