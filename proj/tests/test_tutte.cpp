#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <thread>

#include <json.hpp>

#include "arbor/bounds.hpp"
#include "arbor/strip.hpp"
#include "arbor/tutte.hpp"
#include "support.hpp"

using namespace arbor;

namespace {

TutteCoeffs poly(std::initializer_list<std::tuple<std::size_t, std::size_t, int>> terms) {
  TutteCoeffs t;
  for (auto [i, j, c] : terms) t += TutteCoeffs::monomial(i, j, c);
  return t;
}

BigInt pow2(std::size_t e) { return BigInt(1) << e; }

}  // namespace

TEST_CASE("TutteCoeffs arithmetic") {
  const TutteCoeffs a = poly({{1, 0, 1}, {0, 1, 1}});
  CHECK(a * a == poly({{2, 0, 1}, {1, 1, 2}, {0, 2, 1}}));
  CHECK(a.shifted(2, 1) == poly({{3, 1, 1}, {2, 2, 1}}));
  CHECK((a + TutteCoeffs()) == a);
  CHECK(TutteCoeffs().is_zero());
  CHECK(a.coeff(5, 5) == 0);
  CHECK(to_string(poly({{3, 0, 1}, {2, 0, 1}, {1, 0, 1}, {0, 1, 1}})) == "x^3 + x^2 + x + y");
  CHECK(to_string(poly({{0, 0, 4}, {1, 2, 3}})) == "3*x*y^2 + 4");
}

TEST_CASE("tutte examples") {
  SUBCASE("C4") { CHECK(tutte(cycle_graph(4)) == poly({{0, 1, 1}, {1, 0, 1}, {2, 0, 1}, {3, 0, 1}})); }
  SUBCASE("single loop") { CHECK(tutte(Multigraph(1, {{0, 0}})) == poly({{0, 1, 1}})); }
  SUBCASE("C_{3,2l}") {
    CHECK(tutte(with_loops(cycle_graph(3), 2)) == poly({{0, 7, 1}, {1, 6, 1}, {2, 6, 1}}));
  }
  SUBCASE("C_n closed form") {
    for (std::size_t n = 2; n <= 14; ++n) {
      TutteCoeffs expected = TutteCoeffs::monomial(0, 1);
      for (std::size_t j = 1; j < n; ++j) expected += TutteCoeffs::monomial(j, 0);
      CHECK(tutte(cycle_graph(n)) == expected);
    }
  }
  SUBCASE("K4") {
    const Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(tutte(k4) == poly({{3, 0, 1}, {2, 0, 3}, {1, 0, 2}, {1, 1, 4}, {0, 1, 2}, {0, 2, 3}, {0, 3, 1}}));
  }
  SUBCASE("edgeless and single vertex") {
    CHECK(tutte(Multigraph(4, {})) == TutteCoeffs::constant(1));
    CHECK(tutte(Multigraph(1, {})) == TutteCoeffs::constant(1));
  }
  SUBCASE("cut bundle") {
    // Two triangles joined by a doubled edge: (x + y) * (x^2 + x + y)^2.
    const Multigraph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}, {2, 3}});
    const TutteCoeffs tri = poly({{2, 0, 1}, {1, 0, 1}, {0, 1, 1}});
    CHECK(tutte(g) == poly({{1, 0, 1}, {0, 1, 1}}) * tri * tri);
  }
}

TEST_CASE("evaluate") {
  const TutteCoeffs c3 = tutte(cycle_graph(3));
  CHECK(evaluate(c3, 1, 1) == 3);
  CHECK(evaluate(c3, 2, 2) == 8);
  CHECK(evaluate(tutte(cycle_graph(5)), 2, 1) == 31);
  CHECK(evaluate(c3, BigRational(1, 2), BigRational(-1, 3)) == BigRational(1, 2) + BigRational(1, 4) - BigRational(1, 3));
}

TEST_CASE("counting") {
  const Multigraph k2(2, {{0, 1}});
  const Multigraph grid23 = build_strip({Lattice::kSquare, 2, 3, Boundary::kFree, Boundary::kFree});
  SUBCASE("forests") {
    CHECK(count_spanning_forests(k2) == 2);
    CHECK(count_spanning_forests(cycle_graph(8)) == 255);
    // 2x3 grid, frozen from subset enumeration.
    CHECK(count_spanning_forests(grid23) == 112);
    CHECK(brute_count_forests(grid23) == 112);
  }
  SUBCASE("connected spanning subgraphs") {
    CHECK(count_connected_spanning_subgraphs(k2).value == 1);
    CHECK(count_connected_spanning_subgraphs(cycle_graph(4)).value == 5);
    CHECK(count_connected_spanning_subgraphs(grid23).value == 23);
    for (std::size_t n = 3; n <= 10; ++n) {
      CHECK(count_connected_spanning_subgraphs(cycle_graph(n)).value == n + 1);
      CHECK(brute_count_cssg(cycle_graph(n)) == n + 1);
    }
  }
  SUBCASE("disconnected input") {
    const CssgCount c = count_connected_spanning_subgraphs(Multigraph(4, {{0, 1}, {2, 3}}));
    CHECK(c.value == 0);
    CHECK(c.disconnected);
    CHECK_FALSE(count_connected_spanning_subgraphs(k2).disconnected);
  }
}

TEST_CASE("brute-force oracles") {
  CHECK(brute_count_forests(cycle_graph(3)) == 7);
  CHECK(brute_count_cssg(cycle_graph(3)) == 4);
  CHECK(brute_count_forests(Multigraph(4, {})) == 1);
  CHECK(brute_count_cssg(Multigraph(4, {})) == 0);
  const Multigraph chorded(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  CHECK(brute_count_forests(chorded) == 24);
  CHECK(brute_count_cssg(chorded) == 14);
  CHECK(count_spanning_forests(chorded) == 24);
  CHECK_THROWS_AS(brute_count_forests(cycle_graph(31)), ResourceLimitError);
  CHECK_THROWS_AS(brute_count_cssg(cycle_graph(12), 10), ResourceLimitError);

  // The library oracles against the naive bitmask enumeration.
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    const Multigraph g = testing::random_connected(rng, 2 + i % 6, i % 8, i % 3 == 0);
    const auto naive = testing::naive_counts(g);
    CHECK(brute_count_forests(g) == naive.forests);
    CHECK(brute_count_cssg(g) == naive.connected);
  }
}

TEST_CASE("oracle equivalence and coefficient invariants") {
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    const Multigraph g = testing::random_connected(rng, 2 + i % 9, i % 11, i % 4 == 0);
    const TutteCoeffs t = tutte(g);
    const GraphStats s = stats(g);
    INFO("graph " << i);
    CHECK(numerator(evaluate(t, 2, 1)) == brute_count_forests(g));
    CHECK(numerator(evaluate(t, 1, 2)) == brute_count_cssg(g));
    CHECK(evaluate(t, 2, 2) == BigRational(pow2(s.e)));
    CHECK(t.max_x() <= s.n - s.components);
    CHECK(t.max_y() <= s.cycle_rank);
    for (const auto& term : t.terms()) CHECK(term.c > 0);
    const BigInt forests = numerator(evaluate(t, 2, 1));
    CHECK(forests <= pow2(s.e));
    CHECK(forests <= product_bound(g));
    CHECK(forests >= 1);
  }
}

TEST_CASE("loop decoration leaves forest counts unchanged") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      const Multigraph g = with_loops(cycle_graph(n), m);
      CHECK(tutte(g) == tutte(cycle_graph(n)).shifted(0, m * n));
      CHECK(count_spanning_forests(g) == count_spanning_forests(cycle_graph(n)));
    }
  }
}

TEST_CASE("deletion-contraction identity") {
  std::mt19937 rng(29);
  for (int i = 0; i < 60; ++i) {
    const Multigraph g = testing::random_connected(rng, 3 + i % 7, 1 + i % 8, i % 5 == 0);
    std::uniform_int_distribution<EdgeId> pick(0, g.num_edges() - 1);
    EdgeId id = pick(rng);
    // An ordinary edge: neither a loop nor a bridge.
    int guard = 0;
    while ((g.edge(id).is_loop() || count_components(delete_edge(g, id)) != 1) && ++guard < 100) id = pick(rng);
    if (guard >= 100) continue;
    CHECK(tutte(g) == tutte(delete_edge(g, id)) + tutte(contract_edge(g, id)));
  }
}

TEST_CASE("determinism across labelling, memo use and key mode") {
  std::mt19937 rng(31);
  TutteOptions labelled_only;
  labelled_only.canon.max_vertices = 0;
  TutteEngine shared;
  for (int i = 0; i < 30; ++i) {
    const Multigraph g = testing::random_connected(rng, 4 + i % 9, 3 + i % 10);
    const TutteCoeffs t = tutte(g);
    CHECK(tutte(testing::relabelled(rng, g)) == t);
    CHECK(tutte(g, labelled_only) == t);
    CHECK(shared.tutte(g) == t);
    CHECK(shared.tutte(g) == t);
  }
  CHECK(shared.memo_hits() > 0);
}

TEST_CASE("shared engine under concurrent use") {
  std::vector<Multigraph> graphs;
  for (std::size_t length = 2; length <= 5; ++length) {
    graphs.push_back(build_strip({Lattice::kSquare, 3, length, Boundary::kFree, Boundary::kFree}));
    graphs.push_back(build_strip({Lattice::kTriangular, 2, length + 1, Boundary::kPeriodic, Boundary::kFree}));
  }
  std::vector<TutteCoeffs> serial;
  for (const auto& g : graphs) serial.push_back(tutte(g));

  TutteEngine engine;
  std::vector<std::vector<TutteCoeffs>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] {
      for (const auto& g : graphs) results[t].push_back(engine.tutte(g));
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& r : results) CHECK(r == serial);
}

TEST_CASE("node budget") {
  const Multigraph k6 = [] {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 6; ++u) {
      for (Vertex v = u + 1; v < 6; ++v) edges.push_back({u, v});
    }
    return Multigraph(6, edges);
  }();
  TutteOptions tight;
  tight.node_budget = 5;
  CHECK_THROWS_AS(tutte(k6, tight), ResourceLimitError);
  CHECK_NOTHROW(tutte(k6));

  ::setenv("ARBOR_NODE_BUDGET", "1234", 1);
  CHECK(node_budget_from_env(99) == 1234);
  ::setenv("ARBOR_NODE_BUDGET", "junk", 1);
  CHECK(node_budget_from_env(99) == 99);
  ::unsetenv("ARBOR_NODE_BUDGET");
  CHECK(node_budget_from_env(99) == 99);
}

TEST_CASE("json output") {
  const auto doc = nlohmann::json::parse(to_json(tutte(cycle_graph(4))));
  CHECK(doc["max_x"] == 3);
  CHECK(doc["max_y"] == 1);
  CHECK(doc["coeffs"].size() == 4);
  CHECK(doc["coeffs"][0] == nlohmann::json::array({0, 1, "1"}));

  // Coefficients beyond 64 bits stay exact.
  const TutteCoeffs big = TutteCoeffs::monomial(1, 0, BigInt(1) << 80);
  CHECK(nlohmann::json::parse(to_json(big))["coeffs"][0][2] == "1208925819614629174706176");
}

TEST_CASE("moderate strips stay within budget") {
  // 3x6 square grid and a width-2 periodic triangular strip, checked against
  // the transfer-matrix-independent product and subset bounds.
  const Multigraph grid = build_strip({Lattice::kSquare, 3, 6, Boundary::kFree, Boundary::kFree});
  const BigInt forests = count_spanning_forests(grid);
  CHECK(forests > 0);
  CHECK(forests <= product_bound(grid));
  const Multigraph tri = build_strip({Lattice::kTriangular, 2, 6, Boundary::kPeriodic, Boundary::kFree});
  CHECK(tri.num_edges() == 32);
  CHECK(count_spanning_forests(tri) <= pow2(tri.num_edges()));
}
