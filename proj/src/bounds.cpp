#include "arbor/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace arbor {

double bound_ssg(double delta) { return std::exp2(delta / 2.0); }

double bound_bcl1(double delta) { return delta + 1.0; }

double eta(double delta) {
  if (!(delta > 1.0)) throw std::domain_error("eta requires delta > 1");
  const double d = delta;
  return (d + 1.0) * (d + 1.0 - std::sqrt(d * d - 2.0 * d + 5.0)) / (2.0 * (d - 1.0));
}

double bound_bcl2(double delta) {
  if (!(delta >= 2.0)) throw std::domain_error("bound_bcl2 requires delta >= 2");
  const double h = eta(delta);
  return ((delta + 1.0) / h) * std::pow((delta - 1.0) / (delta - h), (delta - 2.0) / 2.0);
}

std::optional<double> bound_bcl34(int delta) {
  switch (delta) {
    case 4: return 3.994;
    case 5: return 5.1965;
    case 6: return 6.3367;
    default: return std::nullopt;
  }
}

BigInt product_bound(const Multigraph& g) {
  BigInt p = 1;
  for (std::size_t d : g.degrees()) p *= d + 1;
  return p;
}

double crossover_delta() {
  auto gap = [](double d) { return bound_ssg(d) - bound_bcl1(d); };
  double lo = 2.0;  // gap < 0
  double hi = 8.0;  // gap > 0
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BoundReport bound_report(double delta) {
  BoundReport r;
  r.delta = delta;
  r.ssg = bound_ssg(delta);
  r.bcl1 = bound_bcl1(delta);
  r.eta = eta(delta);
  r.bcl2 = bound_bcl2(delta);
  if (std::floor(delta) == delta) r.bcl34 = bound_bcl34(static_cast<int>(delta));
  r.best = std::min({r.ssg, r.bcl1, r.bcl2});
  if (r.bcl34) r.best = std::min(r.best, *r.bcl34);
  return r;
}

double ratio_r_phi(double phi, double phi_u) {
  if (!(phi_u > 0.0)) throw std::domain_error("ratio_r_phi requires phi_u > 0");
  return phi / phi_u;
}

namespace {

// phi, its uncertainty and the upper bound phi_u as printed, with the printed
// ratio phi/phi_u. Version 1.
constexpr std::array kDataset{
    LatticeRecord{Lattice::k4_8_8, "2.77931", "0.00018", "2.779486", "0.99994", 2.77931, 0.00018, 2.779486, 0.99994},
    LatticeRecord{Lattice::kHoneycomb, "2.80428", "0.00050", "2.804781", "0.99982", 2.80428, 0.00050, 2.804781, 0.99982},
    LatticeRecord{Lattice::kKagome, "3.602", "0.012", "3.614045", "0.99667", 3.602, 0.012, 3.614045, 0.99667},
    LatticeRecord{Lattice::kSquare, "3.687", "0.012", "3.699659", "0.99658", 3.687, 0.012, 3.699659, 0.99658},
    LatticeRecord{Lattice::k3_3_3_4_4, "4.530", "0.024", "4.553665", "0.99480", 4.530, 0.024, 4.553665, 0.99480},
    LatticeRecord{Lattice::k3_3_4_3_4, "4.503", "0.065", "4.568231", "0.98572", 4.503, 0.065, 4.568231, 0.98572},
    LatticeRecord{Lattice::kTriangular, "5.444", "0.051", "5.494840", "0.99075", 5.444, 0.051, 5.494840, 0.99075},
};

constexpr std::uint64_t kDatasetChecksum = 0xec155ebc7093c6feULL;

}  // namespace

std::uint64_t dataset_checksum(std::span<const LatticeRecord> records) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= '|';
    h *= 0x100000001b3ULL;
  };
  for (const auto& r : records) {
    mix(lattice_info(r.lattice).mnemonic);
    mix(r.phi_text);
    mix(r.phi_err_text);
    mix(r.phi_u_text);
    mix(r.r_phi_text);
  }
  return h;
}

std::span<const LatticeRecord> lattice_dataset() {
  if (dataset_checksum(kDataset) != kDatasetChecksum) throw std::runtime_error("embedded lattice dataset checksum mismatch");
  for (const auto& r : kDataset) {
    if (std::stod(std::string(r.phi_text)) != r.phi || std::stod(std::string(r.phi_u_text)) != r.phi_u ||
        std::stod(std::string(r.phi_err_text)) != r.phi_err || std::stod(std::string(r.r_phi_text)) != r.r_phi_printed) {
      throw std::runtime_error("embedded lattice dataset text and values disagree");
    }
  }
  return kDataset;
}

const LatticeRecord& lattice_record(Lattice lattice) {
  for (const auto& r : lattice_dataset()) {
    if (r.lattice == lattice) return r;
  }
  throw std::logic_error("lattice missing from dataset");
}

}  // namespace arbor
