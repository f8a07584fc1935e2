#include "arbor/transfer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace arbor {

std::uint64_t bell_number(std::size_t b) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= b; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

PartitionState canonical_partition(std::span<const std::uint8_t> labels) {
  std::array<int, 256> remap;
  remap.fill(-1);
  PartitionState out(labels.size());
  std::uint8_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (remap[labels[i]] < 0) remap[labels[i]] = next++;
    out[i] = static_cast<std::uint8_t>(remap[labels[i]]);
  }
  return out;
}

std::vector<PartitionState> enumerate_states(std::size_t b) {
  if (b < 1 || b > kMaxBoundary) {
    throw std::out_of_range("boundary size " + std::to_string(b) + " outside [1, " + std::to_string(kMaxBoundary) + "]");
  }
  std::vector<PartitionState> out;
  PartitionState current(b, 0);
  std::function<void(std::size_t, std::uint8_t)> extend = [&](std::size_t i, std::uint8_t blocks) {
    if (i == b) {
      out.push_back(current);
      return;
    }
    for (std::uint8_t label = 0; label <= blocks; ++label) {
      current[i] = label;
      extend(i + 1, std::max<std::uint8_t>(blocks, label + 1));
    }
  };
  current[0] = 0;
  extend(1, 1);
  return out;
}

std::size_t TransferMatrix::index_of(const PartitionState& state) const {
  auto it = std::lower_bound(states.begin(), states.end(), state);
  if (it == states.end() || *it != state) throw std::out_of_range("state not in transfer matrix");
  return static_cast<std::size_t>(it - states.begin());
}

std::uint64_t TransferMatrix::entry(std::size_t to, std::size_t from) const {
  const auto& col = columns.at(from);
  auto it = std::lower_bound(col.begin(), col.end(), to, [](const Transition& t, std::size_t v) { return t.to < v; });
  return it != col.end() && it->to == to ? it->weight : 0;
}

std::size_t TransferMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& col : columns) total += col.size();
  return total;
}

std::vector<std::size_t> TransferMatrix::reachable() const {
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < size(); ++s) {
    if (start[s] != 0) {
      seen[s] = 1;
      order.push_back(s);
    }
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const Transition& t : columns[order[head]]) {
      if (!seen[t.to]) {
        seen[t.to] = 1;
        order.push_back(t.to);
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

namespace {

// Connectivity of up to 16 vertices (old column then new column), one
// restricted-growth label per 5-bit field; kDead marks vertices dropped
// after their last edge.
using Packed = unsigned __int128;
constexpr unsigned kBits = 5;
constexpr Packed kMask = 0x1f;

std::uint8_t label_at(Packed p, std::size_t i) { return static_cast<std::uint8_t>((p >> (kBits * i)) & kMask); }

struct PackedHash {
  std::size_t operator()(Packed p) const {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(p) ^ (static_cast<std::uint64_t>(p >> 64) * 0x9e3779b97f4a7c15ULL));
  }
};

Packed pack(std::span<const std::uint8_t> labels) {
  Packed p = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) p |= static_cast<Packed>(labels[i]) << (kBits * i);
  return p;
}

constexpr std::uint8_t kDead = 0x1f;

/// Relabels live vertices in first-occurrence order, skipping dead ones.
Packed canonicalize(Packed p, std::size_t size) {
  std::array<std::uint8_t, 32> remap;
  remap.fill(kDead);
  std::uint8_t next = 0;
  Packed out = 0;
  for (std::size_t k = 0; k < size; ++k) {
    std::uint8_t l = label_at(p, k);
    if (l != kDead) {
      if (remap[l] == kDead) remap[l] = next++;
      l = remap[l];
    }
    out |= static_cast<Packed>(l) << (kBits * k);
  }
  return out;
}

/// Joins the blocks of i and j.
Packed merge(Packed p, std::size_t size, std::size_t i, std::size_t j) {
  const Packed keep = label_at(p, i);
  const std::uint8_t gone = label_at(p, j);
  for (std::size_t k = 0; k < size; ++k) {
    if (label_at(p, k) == gone) p = (p & ~(kMask << (kBits * k))) | (keep << (kBits * k));
  }
  return canonicalize(p, size);
}

Packed forget(Packed p, std::size_t size, std::size_t i) {
  return canonicalize(p | (Packed{kDead} << (kBits * i)), size);
}

using Distribution = std::unordered_map<Packed, std::uint64_t, PackedHash>;

/// Each edge is either absent or, when it joins two different blocks, present.
/// After edge k, the vertices in forget_after[k] are dropped.
Distribution apply_edges(Distribution dist, std::size_t size, const std::vector<Edge>& edges,
                         const std::vector<std::vector<std::size_t>>& forget_after = {}) {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    Distribution next;
    next.reserve(dist.size() * 2);
    for (const auto& [p, w] : dist) {
      const bool join = label_at(p, e.u) != label_at(p, e.v);
      Packed kept = p;
      Packed joined = join ? merge(p, size, e.u, e.v) : 0;
      if (k < forget_after.size()) {
        for (std::size_t v : forget_after[k]) {
          kept = forget(kept, size, v);
          if (join) joined = forget(joined, size, v);
        }
      }
      next[kept] += w;
      if (join) next[joined] += w;
    }
    dist = std::move(next);
  }
  return dist;
}

/// Greedy edge order keeping few vertices in play: old vertices stay live
/// until their last edge, new vertices from their first.
std::vector<Edge> sweep_order(std::vector<Edge> pending, std::size_t b) {
  std::vector<std::size_t> remaining(2 * b, 0);
  for (const Edge& e : pending) {
    ++remaining[e.u];
    ++remaining[e.v];
  }
  std::vector<char> touched(2 * b, 0);
  auto in_play = [&](std::size_t v) { return v < b ? remaining[v] > 0 : touched[v] && remaining[v] > 0; };
  std::vector<Edge> order;
  while (!pending.empty()) {
    std::size_t best = 0;
    long best_cost = 0;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      long cost = 0;
      for (std::size_t v : {std::size_t{pending[k].u}, std::size_t{pending[k].v}}) {
        if (v >= b && !touched[v]) ++cost;
        const std::size_t uses = pending[k].u == pending[k].v ? 2 : 1;
        if (remaining[v] == uses && in_play(v)) --cost;
        if (remaining[v] == uses && v >= b && !touched[v]) --cost;
      }
      if (k == 0 || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    const Edge e = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    touched[e.u] = touched[e.v] = 1;
    --remaining[e.u];
    --remaining[e.v];
    order.push_back(e);
  }
  return order;
}

/// Restriction to vertices [offset, offset + b) as a canonical state.
PartitionState project(Packed p, std::size_t offset, std::size_t b) {
  std::array<std::uint8_t, 16> labels{};
  for (std::size_t k = 0; k < b; ++k) labels[k] = label_at(p, offset + k);
  return canonical_partition(std::span(labels.data(), b));
}

}  // namespace

namespace {

/// States, start vector and no columns.
TransferMatrix first_column(const StripSpec& spec, const ColumnDecomposition& column) {
  if (spec.bc_l == Boundary::kPeriodic) throw std::invalid_argument("transfer matrix requires a free longitudinal boundary");
  const std::size_t b = column.nu;
  TransferMatrix tm;
  tm.nu = b;
  tm.states = enumerate_states(b);
  tm.start.assign(tm.states.size(), 0);
  std::vector<std::uint8_t> singletons(b);
  for (std::size_t k = 0; k < b; ++k) singletons[k] = static_cast<std::uint8_t>(k);
  for (const auto& [p, w] : apply_edges({{pack(singletons), 1}}, b, column.intra)) tm.start[tm.index_of(project(p, 0, b))] += w;
  return tm;
}

}  // namespace

TransferMatrix build_transfer(const StripSpec& spec) {
  const ColumnDecomposition column = column_decomposition(spec);
  TransferMatrix tm = first_column(spec, column);
  const std::size_t b = tm.nu;
  const std::size_t count = tm.states.size();

  // Old column occupies 0..b-1, new column b..2b-1.
  std::vector<Edge> step_edges;
  for (const Edge& e : column.inter) step_edges.push_back({e.u, static_cast<Vertex>(e.v + b)});
  for (const Edge& e : column.intra) step_edges.push_back({static_cast<Vertex>(e.u + b), static_cast<Vertex>(e.v + b)});

  // Old vertices leave once their last edge is processed.
  step_edges = sweep_order(std::move(step_edges), b);
  std::vector<std::vector<std::size_t>> forget_after(step_edges.size());
  for (std::size_t v = 0; v < b; ++v) {
    std::size_t last = 0;
    bool seen = false;
    for (std::size_t k = 0; k < step_edges.size(); ++k) {
      if (step_edges[k].u == v || step_edges[k].v == v) {
        last = k;
        seen = true;
      }
    }
    if (seen) forget_after[last].push_back(v);
  }
  if (step_edges.size() >= 64) throw std::out_of_range("too many edges per column for 64-bit transfer weights");

  // A column depends only on how the old vertices with inter-column edges
  // are connected; the rest start dead.
  std::vector<char> attached(b, 0);
  for (const Edge& e : column.inter) attached[e.u] = 1;

  std::vector<std::uint8_t> labels(2 * b);
  std::map<Packed, std::vector<Transition>> cache;
  std::map<std::size_t, std::uint64_t> targets;
  tm.columns.resize(count);
  for (std::size_t from = 0; from < count; ++from) {
    // Attached old vertices keep their blocks, new vertices are singletons.
    std::array<std::uint8_t, 16> remap;
    remap.fill(kDead);
    std::uint8_t next = 0;
    for (std::size_t k = 0; k < b; ++k) {
      if (!attached[k]) {
        labels[k] = kDead;
        continue;
      }
      if (remap[tm.states[from][k]] == kDead) remap[tm.states[from][k]] = next++;
      labels[k] = remap[tm.states[from][k]];
    }
    for (std::size_t k = 0; k < b; ++k) labels[b + k] = next++;
    const Packed initial = pack(labels);
    auto [it, inserted] = cache.try_emplace(initial);
    if (inserted) {
      targets.clear();
      for (const auto& [p, w] : apply_edges({{initial, 1}}, 2 * b, step_edges, forget_after)) targets[tm.index_of(project(p, b, b))] += w;
      it->second.reserve(targets.size());
      for (const auto& [to, w] : targets) it->second.push_back({static_cast<std::uint32_t>(to), w});
    }
    tm.columns[from] = it->second;
  }

  return tm;
}

std::vector<BigInt> forest_counts(const TransferMatrix& tm, std::size_t m_max) {
  std::vector<BigInt> out;
  std::vector<BigInt> v = tm.start;
  const auto support = tm.reachable();
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (m > 1) {
      std::vector<BigInt> next(tm.size(), 0);
      for (std::size_t from : support) {
        if (v[from] == 0) continue;
        for (const Transition& t : tm.columns[from]) next[t.to] += v[from] * t.weight;
      }
      v = std::move(next);
    }
    BigInt total = 0;
    for (const auto& x : v) total += x;
    out.push_back(std::move(total));
  }
  return out;
}

BigInt count_forests_strip(const StripSpec& spec, std::size_t m) {
  if (m < 1) throw std::invalid_argument("strip length must be at least 1");
  if (m == 1) {
    TransferMatrix tm = first_column(spec, column_decomposition(spec));
    BigInt total = 0;
    for (const auto& x : tm.start) total += x;
    return total;
  }
  return forest_counts(build_transfer(spec), m).back();
}

namespace {

template <class Matrix>
PerronRoot power_iteration(const Matrix& m, const PowerIterationOptions& options) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("dominant_eigenvalue needs a nonempty square matrix");
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m.rows()) / static_cast<double>(m.rows());
  PerronRoot root;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd y = m * x;
    const Eigen::ArrayXd quotient = y.array() / x.array();
    root.lower = quotient.minCoeff();
    root.upper = quotient.maxCoeff();
    root.iterations = it;
    if (!(root.lower > 0.0) && root.upper == 0.0) {
      root.value = 0.0;
      return root;
    }
    if (root.upper - root.lower <= options.relative_tolerance * root.upper) {
      root.value = 0.5 * (root.lower + root.upper);
      return root;
    }
    x = y / y.sum();
    if (!(x.array() > 0.0).all()) break;
  }
  throw std::runtime_error("power iteration did not converge after " + std::to_string(root.iterations) + " iterations");
}

}  // namespace

PerronRoot dominant_eigenvalue(const Eigen::MatrixXd& m, const PowerIterationOptions& options) {
  if ((m.array() < 0.0).any()) throw std::invalid_argument("dominant_eigenvalue needs a nonnegative matrix");
  return power_iteration(m, options);
}

PerronRoot dominant_eigenvalue(const Eigen::SparseMatrix<double>& m, const PowerIterationOptions& options) {
  for (Eigen::Index k = 0; k < m.nonZeros(); ++k) {
    if (m.valuePtr()[k] < 0.0) throw std::invalid_argument("dominant_eigenvalue needs a nonnegative matrix");
  }
  return power_iteration(m, options);
}

namespace {

std::vector<Eigen::Triplet<double>> triplets(const TransferMatrix& tm, std::span<const std::size_t> indices) {
  std::vector<std::ptrdiff_t> position(tm.size(), -1);
  for (std::size_t i = 0; i < indices.size(); ++i) position[indices[i]] = static_cast<std::ptrdiff_t>(i);
  std::vector<Eigen::Triplet<double>> out;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    for (const Transition& t : tm.columns[indices[j]]) {
      if (position[t.to] >= 0) {
        out.emplace_back(static_cast<Eigen::Index>(position[t.to]), static_cast<Eigen::Index>(j), static_cast<double>(t.weight));
      }
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd to_dense(const TransferMatrix& tm, std::span<const std::size_t> indices) {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (const auto& t : triplets(tm, indices)) m(t.row(), t.col()) += t.value();
  return m;
}

Eigen::SparseMatrix<double> to_sparse(const TransferMatrix& tm, std::span<const std::size_t> indices) {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::SparseMatrix<double> m(k, k);
  const auto t = triplets(tm, indices);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

PerronRoot dominant_eigenvalue(const TransferMatrix& tm, const PowerIterationOptions& options) {
  const auto support = tm.reachable();
  return dominant_eigenvalue(to_sparse(tm, support), options);
}

GrowthEstimate phi_estimate(const StripSpec& spec, std::size_t m_max) {
  if (m_max < 3) throw std::invalid_argument("phi_estimate needs m_max >= 3");
  const TransferMatrix tm = build_transfer(spec);
  GrowthEstimate est;
  est.nu = tm.nu;
  est.counts = forest_counts(tm, m_max);
  const double inv_nu = 1.0 / static_cast<double>(tm.nu);
  for (std::size_t m = 0; m + 1 < est.counts.size(); ++m) {
    const BigRational ratio(est.counts[m + 1], est.counts[m]);
    est.ratios.push_back(std::pow(ratio.convert_to<double>(), inv_nu));
  }
  const PerronRoot root = dominant_eigenvalue(tm);
  est.eigenvalue = root.value;
  est.phi = std::pow(root.value, inv_nu);
  est.phi_lower = std::pow(root.lower, inv_nu);
  est.phi_upper = std::pow(root.upper, inv_nu);
  est.err = std::abs(est.ratios.back() - est.ratios[est.ratios.size() - 2]);
  return est;
}

}  // namespace arbor
