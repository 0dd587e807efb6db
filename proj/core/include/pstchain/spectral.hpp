#pragma once

#include <vector>

#include "pstchain/chain.hpp"
#include "pstchain/dense.hpp"

namespace pstchain {

// Eigendecomposition of a real symmetric one-excitation matrix.
//
// Conventions, fixed once for the whole project:
//   - eigenvalues are sorted ascending;
//   - vectors[s][k] is the site-k component of eigenvector s, so the rows of
//     `vectors` form the orthogonal matrix W with W_sk = <k|x_s>;
//   - each eigenvector is sign-normalized to a positive first component
//     (falling back to the first component above 1e-12 when site 0 carries
//     no amplitude), matching the positive square roots of the weights;
//   - weights[s] = vectors[s][0]^2;
//   - parities[s] is the reflection sign, (-1)^(N+s) for mirror-symmetric
//     sources, and the sign of <x_s|R|x_s> for numerically obtained bases.
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> vectors;
  std::vector<double> weights;
  std::vector<int> parities;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

// Orthogonal-polynomial data of a tridiagonal matrix evaluated on a given
// spectrum.  values[k][s] is the degree-k polynomial at eigenvalue s;
// coupling_product is the product of all off-diagonal entries; and
// gap_products[s] = prod_{t != s} |x_s - x_t|, the absolute derivative of the
// monic characteristic polynomial at x_s.
struct OrthoPolyTable {
  std::vector<std::vector<double>> values;
  double coupling_product = 1.0;
  std::vector<double> gap_products;
};

// The equally spaced symmetric spectrum s - N/2, s = 0..N, of the base chain.
std::vector<double> analytic_spectrum(int big_n);

// Closed-form eigenbasis of the base chain: W_sk = sqrt(w_s) K_k(s) with
// binomial weights and Krawtchouk values; parities alternate as (-1)^(N+s).
SpectralData analytic_eigenbasis(int big_n);

// Dense symmetric eigensolver by cyclic Jacobi rotations, used as the
// independent numerical oracle against the closed forms.  Sweeps until the
// off-diagonal Frobenius mass drops below tol (30-sweep budget).  Rejects
// non-symmetric input; throws on non-convergence.
SpectralData jacobi_eigensolve(const RealMatrix& matrix, double tol = 1e-13);

// Forward three-term recurrence for the orthogonal polynomials of a
// tridiagonal matrix on the listed eigenvalues.  Requires bandwidth 1 and
// strictly positive off-diagonal couplings (a zero coupling disconnects the
// chain and the recurrence breaks down).
OrthoPolyTable orthopoly_table(const BandMatrix& jacobi, const std::vector<double>& eigenvalues);

// Reconstructs orthogonality weights from the polynomial table:
//   mirror = true :  w_s = coupling_product / gap_products[s]
//   mirror = false:  w_s = coupling_product / (values[N][s] * P'(x_s)),
// with the derivative sign (-1)^(N+s) fixed by the ascending eigenvalue
// order.  A nonpositive weight signals inconsistent input and throws.
std::vector<double> weights_from_spectrum(const OrthoPolyTable& table, bool mirror);

struct ParityReport {
  bool pass = false;
  double max_violation = 0.0;
};

// Checks the reflection property W_{s, N-k} = (-1)^(N+s) W_{s, k} of
// eigenbases of mirror-symmetric matrices.
ParityReport reflection_parity_check(const SpectralData& data, double tol);

}  // namespace pstchain
