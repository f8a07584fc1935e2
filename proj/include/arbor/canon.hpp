#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arbor/graph.hpp"

namespace arbor {

/// Dense symmetric edge-multiplicity matrix; the diagonal holds loop counts.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), mult_(n * n, 0) {}
  explicit AdjacencyMatrix(const Multigraph& g);

  std::size_t size() const { return n_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return mult_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t m) {
    mult_[i * n_ + j] = m;
    mult_[j * n_ + i] = m;
  }
  void add(std::size_t i, std::size_t j, std::uint32_t m) { set(i, j, at(i, j) + m); }

  /// Loops count twice.
  std::size_t degree(std::size_t v) const;
  std::size_t num_edges() const;

  /// Induced submatrix on `vertices`, in the given order.
  AdjacencyMatrix induced(const std::vector<std::size_t>& vertices) const;

  /// Merges `b` into `a`, dropping all a-b edges and removing row/column b.
  AdjacencyMatrix merged(std::size_t a, std::size_t b) const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> mult_;
};

/// Memo key for a multigraph. With `canonical` set, isomorphic graphs map to
/// equal keys; otherwise the key identifies the labelled graph.
struct CanonKey {
  std::string bytes;
  bool canonical = false;

  friend bool operator==(const CanonKey& a, const CanonKey& b) { return a.bytes == b.bytes; }
};

struct CanonOptions {
  /// Graphs above this size get a label-sensitive key.
  std::size_t max_vertices = 12;
  /// Search-tree leaf cap before falling back to a label-sensitive key.
  std::size_t max_leaves = 4096;
};

CanonKey canon_key(const AdjacencyMatrix& g, const CanonOptions& options = {});
CanonKey canon_key(const Multigraph& g, const CanonOptions& options = {});

}  // namespace arbor

template <>
struct std::hash<arbor::CanonKey> {
  std::size_t operator()(const arbor::CanonKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};
