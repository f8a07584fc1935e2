#include "arbor/tutte.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace arbor {

// ---------------------------------------------------------------------------
// TutteCoeffs

TutteCoeffs TutteCoeffs::constant(const BigInt& c) { return monomial(0, 0, c); }

TutteCoeffs TutteCoeffs::monomial(std::size_t i, std::size_t j, const BigInt& c) {
  TutteCoeffs t;
  if (c == 0) return t;
  t.resize(i + 1, j + 1);
  t.coeffs_[i][j] = c;
  return t;
}

BigInt TutteCoeffs::coeff(std::size_t i, std::size_t j) const {
  if (i > max_x() || j > max_y() || is_zero()) return 0;
  return coeffs_[i][j];
}

void TutteCoeffs::resize(std::size_t rows, std::size_t cols) {
  rows = std::max(rows, coeffs_.size());
  cols = std::max(cols, coeffs_.empty() ? std::size_t{0} : coeffs_[0].size());
  coeffs_.resize(rows);
  for (auto& row : coeffs_) row.resize(cols);
}

void TutteCoeffs::trim() {
  while (!coeffs_.empty() && std::all_of(coeffs_.back().begin(), coeffs_.back().end(), [](const BigInt& c) { return c == 0; })) {
    coeffs_.pop_back();
  }
  if (coeffs_.empty()) return;
  std::size_t cols = coeffs_[0].size();
  while (cols > 0 && std::all_of(coeffs_.begin(), coeffs_.end(), [&](const auto& row) { return row[cols - 1] == 0; })) --cols;
  for (auto& row : coeffs_) row.resize(cols);
}

TutteCoeffs TutteCoeffs::shifted(std::size_t i, std::size_t j) const {
  if (is_zero()) return *this;
  TutteCoeffs out;
  out.resize(coeffs_.size() + i, coeffs_[0].size() + j);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    for (std::size_t b = 0; b < coeffs_[a].size(); ++b) out.coeffs_[a + i][b + j] = coeffs_[a][b];
  }
  return out;
}

TutteCoeffs& TutteCoeffs::operator+=(const TutteCoeffs& other) {
  if (other.is_zero()) return *this;
  resize(other.coeffs_.size(), other.coeffs_[0].size());
  for (std::size_t a = 0; a < other.coeffs_.size(); ++a) {
    for (std::size_t b = 0; b < other.coeffs_[a].size(); ++b) coeffs_[a][b] += other.coeffs_[a][b];
  }
  trim();
  return *this;
}

TutteCoeffs operator*(const TutteCoeffs& a, const TutteCoeffs& b) {
  TutteCoeffs out;
  if (a.is_zero() || b.is_zero()) return out;
  out.resize(a.coeffs_.size() + b.coeffs_.size() - 1, a.coeffs_[0].size() + b.coeffs_[0].size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < a.coeffs_[i].size(); ++j) {
      if (a.coeffs_[i][j] == 0) continue;
      for (std::size_t k = 0; k < b.coeffs_.size(); ++k) {
        for (std::size_t l = 0; l < b.coeffs_[k].size(); ++l) {
          if (b.coeffs_[k][l] != 0) out.coeffs_[i + k][j + l] += a.coeffs_[i][j] * b.coeffs_[k][l];
        }
      }
    }
  }
  out.trim();
  return out;
}

std::vector<TutteCoeffs::Term> TutteCoeffs::terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < coeffs_[i].size(); ++j) {
      if (coeffs_[i][j] != 0) out.push_back({i, j, coeffs_[i][j]});
    }
  }
  return out;
}

BigRational evaluate(const TutteCoeffs& t, const BigRational& x, const BigRational& y) {
  std::vector<BigRational> xp(t.max_x() + 1, BigRational(1));
  std::vector<BigRational> yp(t.max_y() + 1, BigRational(1));
  for (std::size_t i = 1; i < xp.size(); ++i) xp[i] = xp[i - 1] * x;
  for (std::size_t j = 1; j < yp.size(); ++j) yp[j] = yp[j - 1] * y;
  BigRational sum = 0;
  for (const auto& term : t.terms()) sum += BigRational(term.c) * xp[term.i] * yp[term.j];
  return sum;
}

std::string to_string(const TutteCoeffs& t) {
  auto terms = t.terms();
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return std::tie(b.i, b.j) < std::tie(a.i, a.j); });
  std::ostringstream out;
  bool first = true;
  for (const auto& term : terms) {
    if (!first) out << " + ";
    first = false;
    std::vector<std::string> factors;
    if (term.c != 1 || (term.i == 0 && term.j == 0)) factors.push_back(term.c.str());
    auto power = [&](const char* var, std::size_t p) {
      if (p == 1) factors.emplace_back(var);
      if (p > 1) factors.push_back(std::string(var) + "^" + std::to_string(p));
    };
    power("x", term.i);
    power("y", term.j);
    for (std::size_t f = 0; f < factors.size(); ++f) out << (f ? "*" : "") << factors[f];
  }
  return out.str();
}

std::string to_json(const TutteCoeffs& t) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& term : t.terms()) coeffs.push_back({term.i, term.j, term.c.str()});
  nlohmann::ordered_json doc;
  doc["max_x"] = t.max_x();
  doc["max_y"] = t.max_y();
  doc["coeffs"] = coeffs;
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Engine

std::uint64_t node_budget_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("ARBOR_NODE_BUDGET");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0' || value == 0) return fallback;
  return value;
}

struct TutteEngine::Budget {
  std::uint64_t limit;
  std::uint64_t used = 0;

  void tick() {
    if (++used > limit) {
      throw ResourceLimitError("Tutte recursion exceeded node budget of " + std::to_string(limit));
    }
  }
};

namespace {

/// 1 + y + ... + y^(k-1), plus x when the bundle is a cut.
TutteCoeffs bundle_factor(std::uint32_t k, bool cut) {
  TutteCoeffs f = cut ? TutteCoeffs::monomial(1, 0) : TutteCoeffs::constant(1);
  for (std::uint32_t j = 1; j < k; ++j) f += TutteCoeffs::monomial(0, j);
  return f;
}

std::vector<std::vector<std::size_t>> components(const AdjacencyMatrix& g) {
  const std::size_t n = g.size();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && g.at(comp[head], w) > 0) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Bridges of the underlying simple graph of a connected loopless multigraph.
std::vector<std::pair<std::size_t, std::size_t>> simple_bridges(const AdjacencyMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> disc(n, 0), low(n, 0);
  std::size_t timer = 0;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
    disc[u] = low[u] = ++timer;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == u || g.at(u, w) == 0 || w == parent) continue;
      if (disc[w] == 0) {
        dfs(w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] > disc[u]) out.emplace_back(u, w);
      } else {
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  dfs(0, n);
  return out;
}

}  // namespace

TutteEngine::TutteEngine(TutteOptions options) : options_(options) {}

std::size_t TutteEngine::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

std::uint64_t TutteEngine::memo_hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

TutteCoeffs TutteEngine::tutte(const Multigraph& g) {
  Budget budget{options_.node_budget};
  return solve(AdjacencyMatrix(g), budget);
}

TutteCoeffs TutteEngine::solve(const AdjacencyMatrix& g, Budget& budget) {
  budget.tick();
  AdjacencyMatrix loopless = g;
  std::size_t loops = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    loops += g.at(v, v);
    loopless.set(v, v, 0);
  }
  TutteCoeffs result = TutteCoeffs::constant(1);
  for (const auto& comp : components(loopless)) {
    if (comp.size() > 1) result = result * solve_connected(loopless.induced(comp), budget);
  }
  return result.shifted(0, loops);
}

TutteCoeffs TutteEngine::solve_connected(AdjacencyMatrix g, Budget& budget) {
  budget.tick();

  // Contract every bridge of the underlying simple graph. A cut bundle of k
  // parallel edges contributes x + y + ... + y^(k-1).
  TutteCoeffs factor = TutteCoeffs::constant(1);
  if (auto bridges = simple_bridges(g); !bridges.empty()) {
    std::vector<std::size_t> cls(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) cls[v] = v;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) { return cls[v] == v ? v : cls[v] = find(cls[v]); };
    for (auto [u, w] : bridges) {
      factor = factor * bundle_factor(g.at(u, w), true);
      g.set(u, w, 0);
      cls[find(std::max(u, w))] = find(std::min(u, w));
    }
    std::vector<std::size_t> index(g.size());
    std::size_t next = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (find(v) == v) index[v] = next++;
    }
    AdjacencyMatrix quotient(next);
    for (std::size_t u = 0; u < g.size(); ++u) {
      for (std::size_t w = u + 1; w < g.size(); ++w) {
        if (g.at(u, w) > 0) quotient.add(index[find(u)], index[find(w)], g.at(u, w));
      }
    }
    g = std::move(quotient);
  }
  if (g.size() <= 1) return factor;

  const CanonKey key = canon_key(g, options_.canon);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++hits_;
      return factor * it->second;
    }
  }

  // Branch on the bundle between a highest-degree vertex and its
  // highest-degree neighbour.
  std::size_t u = 0;
  for (std::size_t v = 1; v < g.size(); ++v) {
    if (g.degree(v) > g.degree(u)) u = v;
  }
  std::size_t w = g.size();
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (v != u && g.at(u, v) > 0 && (w == g.size() || g.degree(v) > g.degree(w))) w = v;
  }
  const std::uint32_t k = g.at(u, w);

  AdjacencyMatrix deleted = g;
  deleted.set(u, w, 0);
  TutteCoeffs result = solve_connected(std::move(deleted), budget);
  AdjacencyMatrix contracted = g.merged(u, w);
  result += bundle_factor(k, false) * (contracted.size() > 1 ? solve_connected(std::move(contracted), budget) : TutteCoeffs::constant(1));

  {
    std::lock_guard lock(mutex_);
    memo_.emplace(key, result);
  }
  return factor * result;
}

TutteCoeffs tutte(const Multigraph& g, const TutteOptions& options) { return TutteEngine(options).tutte(g); }

BigInt count_spanning_forests(const Multigraph& g, const TutteOptions& options) {
  return numerator(evaluate(tutte(g, options), 2, 1));
}

CssgCount count_connected_spanning_subgraphs(const Multigraph& g, const TutteOptions& options) {
  if (count_components(g) != 1) return {0, true};
  return {numerator(evaluate(tutte(g, options), 1, 2)), false};
}

// ---------------------------------------------------------------------------
// Brute-force oracles

namespace {

/// Union-find without path compression so unions can be undone in LIFO order.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    --components_;
    return true;
  }

  void undo() {
    const std::size_t b = history_.back();
    history_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
    ++components_;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
  std::size_t components_;
};

void check_cap(const Multigraph& g, std::size_t cap) {
  if (g.num_edges() > cap) {
    throw ResourceLimitError("brute force limited to " + std::to_string(cap) + " edges, graph has " + std::to_string(g.num_edges()));
  }
}

}  // namespace

BigInt brute_count_forests(const Multigraph& g, std::size_t cap) {
  check_cap(g, cap);
  RollbackUnionFind uf(g.num_vertices());
  std::uint64_t count = 0;
  auto edges = g.edges();
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (i == edges.size()) {
      ++count;
      return;
    }
    visit(i + 1);
    if (uf.unite(edges[i].u, edges[i].v)) {
      visit(i + 1);
      uf.undo();
    }
  };
  visit(0);
  return count;
}

BigInt brute_count_cssg(const Multigraph& g, std::size_t cap) {
  check_cap(g, cap);
  RollbackUnionFind uf(g.num_vertices());
  std::uint64_t count = 0;
  auto edges = g.edges();
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (i == edges.size()) {
      count += uf.components() == 1;
      return;
    }
    visit(i + 1);
    if (uf.unite(edges[i].u, edges[i].v)) {
      visit(i + 1);
      uf.undo();
    } else {
      visit(i + 1);
    }
  };
  visit(0);
  return count;
}

}  // namespace arbor
