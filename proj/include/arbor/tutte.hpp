#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/bigint.hpp"
#include "arbor/canon.hpp"
#include "arbor/graph.hpp"

namespace arbor {

/// Thrown when an exponential computation exceeds its configured budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact coefficients of a bivariate polynomial in x and y. Storage is
/// trimmed so that the highest row and column are nonzero.
class TutteCoeffs {
 public:
  TutteCoeffs() = default;

  static TutteCoeffs constant(const BigInt& c);
  static TutteCoeffs monomial(std::size_t i, std::size_t j, const BigInt& c = 1);

  /// Degree in x and y; both 0 for the zero polynomial.
  std::size_t max_x() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::size_t max_y() const { return coeffs_.empty() ? 0 : coeffs_[0].size() - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Zero outside the stored range.
  BigInt coeff(std::size_t i, std::size_t j) const;

  /// Multiplies by x^i y^j.
  TutteCoeffs shifted(std::size_t i, std::size_t j) const;

  TutteCoeffs& operator+=(const TutteCoeffs& other);
  friend TutteCoeffs operator+(TutteCoeffs a, const TutteCoeffs& b) { return a += b; }
  friend TutteCoeffs operator*(const TutteCoeffs& a, const TutteCoeffs& b);
  friend bool operator==(const TutteCoeffs&, const TutteCoeffs&) = default;

  /// Nonzero terms as (i, j, coefficient), sorted by (i, j).
  struct Term {
    std::size_t i;
    std::size_t j;
    BigInt c;
  };
  std::vector<Term> terms() const;

 private:
  void resize(std::size_t rows, std::size_t cols);
  void trim();

  // coeffs_[i][j] multiplies x^i y^j; all rows have equal length.
  std::vector<std::vector<BigInt>> coeffs_;
};

BigRational evaluate(const TutteCoeffs& t, const BigRational& x, const BigRational& y);

/// Human-readable form, e.g. "x^3 + x^2 + x + y".
std::string to_string(const TutteCoeffs& t);

/// {"max_x":..,"max_y":..,"coeffs":[[i,j,"decimal"],..]}
std::string to_json(const TutteCoeffs& t);

struct TutteOptions {
  std::uint64_t node_budget = 20'000'000;
  CanonOptions canon;
};

/// Budget from ARBOR_NODE_BUDGET if set and valid, else `fallback`.
std::uint64_t node_budget_from_env(std::uint64_t fallback = TutteOptions{}.node_budget);

/// Deletion–contraction with loop and bridge stripping, parallel-class
/// bundling, component factorisation and a memo keyed on CanonKey. The memo is
/// shared by every call on the same engine and is safe to use concurrently.
class TutteEngine {
 public:
  explicit TutteEngine(TutteOptions options = {});

  TutteCoeffs tutte(const Multigraph& g);

  std::size_t memo_size() const;
  std::uint64_t memo_hits() const;

 private:
  struct Budget;
  TutteCoeffs solve(const AdjacencyMatrix& g, Budget& budget);
  TutteCoeffs solve_connected(AdjacencyMatrix g, Budget& budget);

  TutteOptions options_;
  mutable std::mutex mutex_;
  std::unordered_map<CanonKey, TutteCoeffs> memo_;
  std::uint64_t hits_ = 0;
};

TutteCoeffs tutte(const Multigraph& g, const TutteOptions& options = {});

/// T(G; 2, 1).
BigInt count_spanning_forests(const Multigraph& g, const TutteOptions& options = {});

struct CssgCount {
  BigInt value;
  /// Set when the input is disconnected; `value` is then 0.
  bool disconnected = false;
};

/// T(G; 1, 2) for connected G.
CssgCount count_connected_spanning_subgraphs(const Multigraph& g, const TutteOptions& options = {});

inline constexpr std::size_t kBruteForceEdgeCap = 30;

/// Direct enumeration of edge subsets. Throw ResourceLimitError above `cap` edges.
BigInt brute_count_forests(const Multigraph& g, std::size_t cap = kBruteForceEdgeCap);
BigInt brute_count_cssg(const Multigraph& g, std::size_t cap = kBruteForceEdgeCap);

}  // namespace arbor
