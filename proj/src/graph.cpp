#include "arbor/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

namespace arbor {

namespace {

std::vector<std::pair<Vertex, Vertex>> normalized(std::span<const Edge> edges) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(out.begin(), out.end());
  return out;
}

Vertex find_root(std::vector<Vertex>& parent, Vertex x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Multigraph::Multigraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw std::out_of_range("edge endpoint " + std::to_string(std::max(e.u, e.v)) +
                              " out of range for " + std::to_string(n_) + " vertices");
    }
  }
}

const Edge& Multigraph::edge(EdgeId id) const {
  if (id >= edges_.size()) throw std::out_of_range("edge id " + std::to_string(id) + " out of range");
  return edges_[id];
}

std::size_t Multigraph::degree(Vertex v) const {
  std::size_t d = 0;
  for (const Edge& e : edges_) d += (e.u == v) + (e.v == v);
  return d;
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> d(n_, 0);
  for (const Edge& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::size_t Multigraph::num_loops() const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

bool operator==(const Multigraph& a, const Multigraph& b) {
  return a.n_ == b.n_ && a.edges_.size() == b.edges_.size() && normalized(a.edges_) == normalized(b.edges_);
}

Multigraph build_graph(std::size_t n, std::span<const Edge> edges) {
  return Multigraph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

std::size_t count_components(const Multigraph& g) {
  std::vector<Vertex> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  std::size_t k = g.num_vertices();
  for (const Edge& e : g.edges()) {
    Vertex a = find_root(parent, e.u);
    Vertex b = find_root(parent, e.v);
    if (a != b) {
      parent[a] = b;
      --k;
    }
  }
  return k;
}

std::optional<std::size_t> girth(const Multigraph& g) {
  if (g.num_loops() > 0) return 1;
  auto pairs = normalized(g.edges());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) return 2;

  const std::size_t n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> parent(n);
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[root] = 0;
    parent[root] = root;
    std::queue<Vertex> queue;
    queue.push(root);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop();
      if (2 * dist[u] >= best) break;
      for (Vertex w : adj[u]) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

GraphStats stats(const Multigraph& g) {
  GraphStats s;
  s.n = g.num_vertices();
  s.e = g.num_edges();
  s.components = count_components(g);
  s.cycle_rank = s.e + s.components - s.n;
  auto deg = g.degrees();
  if (!deg.empty()) {
    auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
    s.min_degree = *lo;
    s.max_degree = *hi;
  }
  s.girth = girth(g);
  return s;
}

Multigraph delete_edge(const Multigraph& g, EdgeId id) {
  g.edge(id);
  std::vector<Edge> edges;
  edges.reserve(g.num_edges() - 1);
  for (EdgeId i = 0; i < g.num_edges(); ++i) {
    if (i != id) edges.push_back(g.edges()[i]);
  }
  return Multigraph(g.num_vertices(), std::move(edges));
}

Multigraph contract_edge(const Multigraph& g, EdgeId id) {
  const Edge& target = g.edge(id);
  if (target.is_loop()) throw std::invalid_argument("cannot contract a loop");
  const Vertex keep = std::min(target.u, target.v);
  const Vertex gone = std::max(target.u, target.v);
  auto relabel = [&](Vertex x) -> Vertex {
    if (x == gone) return keep;
    return x > gone ? x - 1 : x;
  };
  std::vector<Edge> edges;
  edges.reserve(g.num_edges() - 1);
  for (EdgeId i = 0; i < g.num_edges(); ++i) {
    if (i == id) continue;
    const Edge& e = g.edges()[i];
    edges.push_back({relabel(e.u), relabel(e.v)});
  }
  return Multigraph(g.num_vertices() - 1, std::move(edges));
}

Multigraph cycle_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cycle needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Multigraph(n, std::move(edges));
}

Multigraph with_loops(const Multigraph& g, std::size_t loops) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (std::size_t i = 0; i < loops; ++i) edges.push_back({v, v});
  }
  return Multigraph(g.num_vertices(), std::move(edges));
}

Multigraph read_edge_list(std::istream& in) {
  long long n = -1;
  long long e = -1;
  if (!(in >> n >> e) || n < 0 || e < 0) throw std::invalid_argument("edge list: bad header, expected \"n e\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(e));
  for (long long i = 0; i < e; ++i) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: expected " + std::to_string(e) + " edges, got " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::out_of_range("edge list: endpoint out of range on edge " + std::to_string(i));
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Multigraph(static_cast<std::size_t>(n), std::move(edges));
}

void write_edge_list(std::ostream& out, const Multigraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace arbor
