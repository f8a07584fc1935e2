#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "arbor/bigint.hpp"
#include "arbor/strip.hpp"

namespace arbor {

/// Restricted-growth string: block label of each boundary vertex, with
/// labels first appearing in increasing order.
using PartitionState = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxBoundary = 8;

std::uint64_t bell_number(std::size_t b);

/// Relabels blocks into restricted-growth form.
PartitionState canonical_partition(std::span<const std::uint8_t> labels);

/// All B(b) partitions of b boundary vertices, lexicographically ordered.
/// Throws std::out_of_range unless 1 <= b <= kMaxBoundary.
std::vector<PartitionState> enumerate_states(std::size_t b);

struct Transition {
  std::uint32_t to = 0;
  std::uint64_t weight = 0;
};

/// Column-to-column transfer matrix for spanning forests on a strip with free
/// longitudinal ends. entry(to, from) counts the edge subsets of one new
/// column (its inter-column and intra-column edges) that keep the forest
/// acyclic and take boundary connectivity `from` to `to`. Stored by column,
/// nonzeros only, sorted by `to`.
struct TransferMatrix {
  std::size_t nu = 0;
  std::vector<PartitionState> states;
  std::vector<std::vector<Transition>> columns;
  /// Forest counts on the first column alone, by final boundary state.
  std::vector<BigInt> start;

  std::size_t size() const { return states.size(); }
  std::size_t index_of(const PartitionState& state) const;
  std::uint64_t entry(std::size_t to, std::size_t from) const;
  std::size_t nonzeros() const;

  /// Indices reachable from the support of `start`.
  std::vector<std::size_t> reachable() const;
};

/// Throws std::out_of_range when a column exceeds kMaxBoundary vertices and
/// std::invalid_argument for a periodic longitudinal boundary.
TransferMatrix build_transfer(const StripSpec& spec);

/// N_SF for lengths 1..m_max.
std::vector<BigInt> forest_counts(const TransferMatrix& tm, std::size_t m_max);

/// N_SF of the strip of length m, ignoring spec.length.
BigInt count_forests_strip(const StripSpec& spec, std::size_t m);

struct PerronRoot {
  double value = 0.0;
  /// Collatz–Wielandt bracket.
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
};

struct PowerIterationOptions {
  double relative_tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

/// Power iteration on a nonnegative matrix; throws std::runtime_error if the
/// bracket has not closed after max_iterations.
PerronRoot dominant_eigenvalue(const Eigen::MatrixXd& m, const PowerIterationOptions& options = {});

PerronRoot dominant_eigenvalue(const Eigen::SparseMatrix<double>& m, const PowerIterationOptions& options = {});

/// Perron root of the block reachable from the start vector.
PerronRoot dominant_eigenvalue(const TransferMatrix& tm, const PowerIterationOptions& options = {});

/// Restriction of the transfer matrix to `indices`, as doubles.
Eigen::MatrixXd to_dense(const TransferMatrix& tm, std::span<const std::size_t> indices);
Eigen::SparseMatrix<double> to_sparse(const TransferMatrix& tm, std::span<const std::size_t> indices);

struct GrowthEstimate {
  std::size_t nu = 0;
  std::vector<BigInt> counts;   // N_SF at lengths 1..m_max
  std::vector<double> ratios;   // (N_{m+1}/N_m)^(1/nu), m = 1..m_max-1
  double eigenvalue = 0.0;
  double phi = 0.0;             // eigenvalue^(1/nu)
  double phi_lower = 0.0;
  double phi_upper = 0.0;
  double err = 0.0;             // |r_last - r_prev|
};

/// Throws std::invalid_argument for m_max < 3.
GrowthEstimate phi_estimate(const StripSpec& spec, std::size_t m_max);

}  // namespace arbor
