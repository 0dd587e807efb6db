#pragma once

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <vector>

#include "pstchain/dense.hpp"
#include "pstchain/rational.hpp"

namespace pstchain {

// The polynomial q(x) = alpha x^2 + beta x that lifts the base couplings to
// the band Hamiltonian; alpha = 0 is the nearest-neighbour chain, beta = 0
// the purely quadratic one.
struct Quadratic {
  double alpha = 0.0;
  double beta = 1.0;

  double operator()(double x) const noexcept { return (alpha * x + beta) * x; }
};

// Parameters of an engineered chain on sites 0..n.  Couplings are stored in
// energy units with hbar = 1, so times are inverse energies throughout.
//
// `ratio` optionally pins alpha/beta exactly (only meaningful when beta > 0);
// beta == 0 itself marks the pure-quadratic branch.  The transfer/revival
// predicates run on the exact ratio, never on a float quotient.
struct ChainSpec {
  int n = 1;           // chain has n + 1 sites
  double alpha = 0.0;  // next-to-nearest strength, coefficient of the squared couplings
  double beta = 1.0;   // nearest-neighbour strength
  std::optional<Rational> ratio;

  Quadratic q() const noexcept { return {alpha, beta}; }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

// Throws std::invalid_argument when the spec violates its invariants:
// n >= 1, alpha/beta nonnegative and not both zero, ratio consistent with
// alpha/beta within 1e-12, no ratio on the beta == 0 branch.
void validate(const ChainSpec& spec);

// One-excitation Hamiltonian in band storage.  Only the upper bands are
// kept; the matrix is symmetric by construction.  Entry conventions:
//   diag[i]            = field strength at site i           (i = 0..n)
//   bands[k-1][m-k]    = coupling between sites m-k and m   (m = k..n)
struct BandMatrix {
  int n = 0;
  std::vector<double> diag;
  std::vector<std::vector<double>> bands;

  int bandwidth() const noexcept { return static_cast<int>(bands.size()); }
  std::size_t size() const noexcept { return diag.size(); }

  // J^{(k)}_m, zero outside m = k..n (the open-end boundary convention).
  double coupling(int k, int m) const;

  RealMatrix to_dense() const;

  friend bool operator==(const BandMatrix&, const BandMatrix&) = default;
};

// Parabolic coupling profile (1/2) sqrt(site (N - site + 1)); vanishes at
// site = 0 and site = N + 1, peaks at the chain centre.
double base_coupling(int site, int big_n);

// Tridiagonal base matrix: off-diagonal entries base_coupling(1..N), zero
// diagonal.  Mirror-symmetric, eigenvalues s - N/2.
BandMatrix base_jacobi(int big_n);

// Band Hamiltonian of the spec: beta * base couplings on the first band and,
// when alpha > 0, products of adjacent base couplings on the second band with
// the matching diagonal field.  Entrywise equal to the dense polynomial
// alpha J^2 + beta J of the base matrix.
BandMatrix build_hamiltonian(const ChainSpec& spec);

// Anti-diagonal permutation: reflection site i -> site N - i.
RealMatrix reflection_matrix(int big_n);

struct MirrorReport {
  bool mirror_symmetric = false;
  double max_violation = 0.0;
};

// Checks coupling(k, m) == coupling(k, N - m + k) and diag[i] == diag[N - i]
// within tol; equivalent to commuting with the reflection matrix.
MirrorReport mirror_symmetry_check(const BandMatrix& h, double tol);

// JSON wire format: {"n_sites", "bandwidth", "diag", "band1", "band2"}.
void to_json(nlohmann::json& j, const BandMatrix& m);
void from_json(const nlohmann::json& j, BandMatrix& m);

}  // namespace pstchain
