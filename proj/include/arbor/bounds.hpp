#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "arbor/bigint.hpp"
#include "arbor/graph.hpp"
#include "arbor/strip.hpp"

namespace arbor {

/// 2^(delta/2): every edge subset of a delta-regular graph.
double bound_ssg(double delta);

/// delta + 1.
double bound_bcl1(double delta);

/// (d+1)(d+1-sqrt(d^2-2d+5)) / (2(d-1)); throws std::domain_error for d <= 1.
double eta(double delta);

/// ((d+1)/eta) * ((d-1)/(d-eta))^((d-2)/2); throws std::domain_error for d < 2.
double bound_bcl2(double delta);

/// Stored constants: 3.994 for degree 4, 5.1965 for 5, 6.3367 for 6.
std::optional<double> bound_bcl34(int delta);

/// prod_v (deg(v) + 1), loops counted twice.
BigInt product_bound(const Multigraph& g);

/// Root above 2 of 2^(d/2) = d + 1, by bisection to 1e-8 or better.
double crossover_delta();

struct BoundReport {
  double delta = 0.0;
  double ssg = 0.0;
  double bcl1 = 0.0;
  double eta = 0.0;
  double bcl2 = 0.0;
  std::optional<double> bcl34;
  double best = 0.0;
};

BoundReport bound_report(double delta);

/// phi / phi_u; throws std::domain_error for phi_u <= 0.
double ratio_r_phi(double phi, double phi_u);

/// Growth constant and upper bound for one lattice, embedded from the
/// reference dataset. The *_text members hold the stored digits.
struct LatticeRecord {
  Lattice lattice;
  std::string_view phi_text;
  std::string_view phi_err_text;
  std::string_view phi_u_text;
  std::string_view r_phi_text;
  double phi;
  double phi_err;
  double phi_u;
  double r_phi_printed;
};

/// Rows in reference order. Throws std::runtime_error if the embedded
/// text no longer matches its checksum.
std::span<const LatticeRecord> lattice_dataset();

/// FNV-1a over the dataset's printed text.
std::uint64_t dataset_checksum(std::span<const LatticeRecord> records);

const LatticeRecord& lattice_record(Lattice lattice);

}  // namespace arbor
