#include "arbor/canon.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace arbor {

AdjacencyMatrix::AdjacencyMatrix(const Multigraph& g) : AdjacencyMatrix(g.num_vertices()) {
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      mult_[e.u * n_ + e.u] += 1;
    } else {
      add(e.u, e.v, 1);
    }
  }
}

std::size_t AdjacencyMatrix::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < n_; ++w) d += at(v, w);
  return d + at(v, v);
}

std::size_t AdjacencyMatrix::num_edges() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) e += at(i, j);
  }
  return e;
}

AdjacencyMatrix AdjacencyMatrix::induced(const std::vector<std::size_t>& vertices) const {
  AdjacencyMatrix out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = 0; j < vertices.size(); ++j) out.mult_[i * out.n_ + j] = at(vertices[i], vertices[j]);
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::merged(std::size_t a, std::size_t b) const {
  AdjacencyMatrix out(n_ - 1);
  auto old_index = [&](std::size_t i) { return i < b ? i : i + 1; };
  const std::size_t a_new = a < b ? a : a - 1;
  for (std::size_t i = 0; i < out.n_; ++i) {
    for (std::size_t j = 0; j < out.n_; ++j) out.mult_[i * out.n_ + j] = at(old_index(i), old_index(j));
  }
  for (std::size_t w = 0; w < n_; ++w) {
    if (w == a || w == b) continue;
    const std::size_t w_new = w < b ? w : w - 1;
    out.add(a_new, w_new, at(b, w));
  }
  out.mult_[a_new * out.n_ + a_new] = at(a, a) + at(b, b);
  return out;
}

namespace {

using Coloring = std::vector<std::uint32_t>;

void put_u32(std::string& s, std::uint32_t x) {
  for (int k = 0; k < 4; ++k) s.push_back(static_cast<char>((x >> (8 * k)) & 0xff));
}

template <class Sig>
Coloring rank_signatures(const std::vector<Sig>& sig) {
  std::vector<Sig> sorted = sig;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring out(sig.size());
  for (std::size_t v = 0; v < sig.size(); ++v) {
    out[v] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
  }
  return out;
}

std::size_t num_cells(const Coloring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

/// Equitable refinement: split cells by the multiset of (neighbour colour, multiplicity).
Coloring refine(const AdjacencyMatrix& g, Coloring colors) {
  const std::size_t n = g.size();
  using Sig = std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>;
  std::size_t cells = num_cells(colors);
  while (true) {
    std::vector<Sig> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = colors[v];
      for (std::size_t w = 0; w < n; ++w) {
        if (w != v && g.at(v, w) > 0) sig[v].second.emplace_back(colors[w], g.at(v, w));
      }
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    Coloring next = rank_signatures(sig);
    const std::size_t next_cells = num_cells(next);
    colors = std::move(next);
    if (next_cells == cells) return colors;
    cells = next_cells;
  }
}

std::string relabelled_bytes(const AdjacencyMatrix& g, const Coloring& position) {
  const std::size_t n = g.size();
  std::vector<std::size_t> at_position(n);
  for (std::size_t v = 0; v < n; ++v) at_position[position[v]] = v;
  std::string s;
  s.reserve(4 * (n * (n + 1) / 2 + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) put_u32(s, g.at(at_position[i], at_position[j]));
  }
  return s;
}

class CanonSearch {
 public:
  CanonSearch(const AdjacencyMatrix& g, std::size_t max_leaves) : g_(g), max_leaves_(max_leaves) {}

  std::optional<std::string> run() {
    std::vector<std::pair<std::uint32_t, std::size_t>> initial(g_.size());
    for (std::size_t v = 0; v < g_.size(); ++v) initial[v] = {g_.at(v, v), g_.degree(v)};
    if (!search(refine(g_, rank_signatures(initial)))) return std::nullopt;
    return best_;
  }

 private:
  bool search(const Coloring& colors) {
    const std::size_t n = g_.size();
    if (num_cells(colors) == n) {
      if (++leaves_ > max_leaves_) return false;
      std::string bytes = relabelled_bytes(g_, colors);
      if (!have_best_ || bytes < best_) {
        best_ = std::move(bytes);
        have_best_ = true;
      }
      return true;
    }
    // Target: the lowest-coloured cell with more than one vertex.
    std::vector<std::size_t> cell_size(num_cells(colors), 0);
    for (auto c : colors) ++cell_size[c];
    std::uint32_t target = 0;
    while (cell_size[target] < 2) ++target;
    for (std::size_t v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      std::vector<std::pair<std::uint32_t, int>> sig(n);
      for (std::size_t w = 0; w < n; ++w) sig[w] = {colors[w], w == v ? 0 : 1};
      if (!search(refine(g_, rank_signatures(sig)))) return false;
    }
    return true;
  }

  const AdjacencyMatrix& g_;
  std::size_t max_leaves_;
  std::size_t leaves_ = 0;
  bool have_best_ = false;
  std::string best_;
};

std::string header(char tag, std::size_t n) {
  std::string s(1, tag);
  put_u32(s, static_cast<std::uint32_t>(n));
  return s;
}

}  // namespace

CanonKey canon_key(const AdjacencyMatrix& g, const CanonOptions& options) {
  if (g.size() <= options.max_vertices) {
    if (auto bytes = CanonSearch(g, options.max_leaves).run()) {
      return {header('C', g.size()) + *bytes, true};
    }
  }
  Coloring identity(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) identity[v] = static_cast<std::uint32_t>(v);
  return {header('L', g.size()) + relabelled_bytes(g, identity), false};
}

CanonKey canon_key(const Multigraph& g, const CanonOptions& options) {
  return canon_key(AdjacencyMatrix(g), options);
}

}  // namespace arbor
