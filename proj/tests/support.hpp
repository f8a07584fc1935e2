#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/strip.hpp"

namespace arbor::testing {

/// Connected multigraph: a random spanning tree plus extra random edges,
/// parallel edges and (optionally) loops allowed.
inline Multigraph random_connected(std::mt19937& rng, std::size_t n, std::size_t extra, bool loops = false) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    edges.push_back({static_cast<Vertex>(pick(rng)), static_cast<Vertex>(v)});
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  if (n < 2 && !loops) extra = 0;
  while (extra > 0) {
    const auto u = static_cast<Vertex>(any(rng));
    const auto v = static_cast<Vertex>(any(rng));
    if (u == v && !loops) continue;
    edges.push_back({u, v});
    --extra;
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return Multigraph(n, std::move(edges));
}

/// Same graph with vertices renamed by a random permutation and edges shuffled.
inline Multigraph relabelled(std::mt19937& rng, const Multigraph& g) {
  std::vector<Vertex> perm(g.num_vertices());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<Vertex>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.v], perm[e.u]});
  std::shuffle(edges.begin(), edges.end(), rng);
  return Multigraph(g.num_vertices(), std::move(edges));
}

/// Subset-by-bitmask enumeration with a fresh union-find per subset; kept
/// deliberately naive so it shares no code with the library counters.
struct NaiveCounts {
  std::uint64_t forests = 0;
  std::uint64_t connected = 0;
};

inline NaiveCounts naive_counts(const Multigraph& g) {
  NaiveCounts out;
  const auto edges = g.edges();
  const std::size_t n = g.num_vertices();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    bool acyclic = true;
    std::size_t components = n;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!((mask >> i) & 1)) continue;
      const std::size_t a = find(edges[i].u);
      const std::size_t b = find(edges[i].v);
      if (a == b) {
        acyclic = false;
      } else {
        parent[a] = b;
        --components;
      }
    }
    out.forests += acyclic;
    out.connected += components == 1;
  }
  return out;
}

struct NamedGraph {
  std::string name;
  Multigraph graph;
  std::optional<StripSpec> strip;
};

/// Small strips of every lattice, cycles, loop-decorated cycles and random
/// connected multigraphs, all with at most `max_edges` edges.
inline std::vector<NamedGraph> oracle_corpus(std::size_t max_edges = 20) {
  std::vector<NamedGraph> corpus;
  for (Lattice lattice : all_lattices()) {
    for (std::size_t width = 1; width <= 2; ++width) {
      for (Boundary bc_t : {Boundary::kFree, Boundary::kPeriodic}) {
        if (bc_t == Boundary::kPeriodic && width == 1) continue;
        for (std::size_t length = 1; length <= 6; ++length) {
          StripSpec spec{lattice, width, length, bc_t, Boundary::kFree};
          Multigraph g = build_strip(spec);
          if (g.num_edges() > max_edges) break;
          corpus.push_back({std::string(lattice_info(lattice).mnemonic) + " w" + std::to_string(width) + " " +
                                std::string(to_string(bc_t)) + " m" + std::to_string(length),
                            std::move(g), spec});
        }
      }
    }
  }
  for (std::size_t n = 3; n <= 12; ++n) corpus.push_back({"C" + std::to_string(n), cycle_graph(n), std::nullopt});
  for (std::size_t n = 3; n <= 5; ++n) {
    for (std::size_t m = 1; m <= 2; ++m) {
      corpus.push_back({"C" + std::to_string(n) + "," + std::to_string(m) + "l", with_loops(cycle_graph(n), m), std::nullopt});
    }
  }
  std::mt19937 rng(20240611);
  for (int i = 0; i < 15; ++i) {
    std::uniform_int_distribution<std::size_t> nd(3, 8);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> xd(0, std::min<std::size_t>(max_edges - (n - 1), 10));
    corpus.push_back({"random " + std::to_string(i), random_connected(rng, n, xd(rng), i % 3 == 0), std::nullopt});
  }
  return corpus;
}

}  // namespace arbor::testing
