#pragma once

#include <vector>

namespace pstchain {

// Values of the normalized symmetric Krawtchouk polynomials on the integer
// grid s = 0..N, together with the binomial orthogonality weights.  The
// family diagonalizes the parabolic-coupling chain: row n evaluated at s is
// the overlap of site n with the eigenvector of eigenvalue s - N/2.
struct KrawtchoukTable {
  int n = 0;                                // grid size parameter N; table is (N+1) x (N+1)
  std::vector<std::vector<double>> values;  // values[n][s]
  std::vector<double> weights;              // w_s = C(N, s) / 2^N

  double at(int degree, int s) const { return values[degree][s]; }
};

// Pochhammer symbol a (a+1) ... (a+k-1); the empty product (k = 0) is 1.
double pochhammer(double a, int k);

// Binomial coefficient computed multiplicatively in doubles.  Exact for the
// desk-scale N used here (well below the 2^53 integer ceiling up to N = 64).
double binomial(int n, int k);

// Terminating Gauss series 2F1(-n, -b; -N; z) summed to the first vanishing
// numerator Pochhammer (k = min(n, b)).  Requires n <= N so the denominator
// factors (-N)_k never hit zero inside the sum.
double hyp2f1_terminating(int n, int b, int big_n, double z);

// Closed form (-1)^n sqrt(C(N,n)) 2F1(-n, -s; -N; 2).  Reference path for
// cross-checks; the alternating sum loses digits as N grows, so production
// code should evaluate through the recurrence table instead.
double krawtchouk_hypergeometric(int degree, int s, int big_n);

// w_s = C(N, s) / 2^N; positive, symmetric, sums to one.
std::vector<double> binomial_weights(int big_n);

// Full table built row by row from the three-term recurrence
//   (s - N/2) K_n(s) = a_{n+1} K_{n+1}(s) + a_n K_{n-1}(s),
// with a_n = sqrt(n (N - n + 1)) / 2.  Numerically stable for N well beyond
// the hypergeometric path.
KrawtchoukTable krawtchouk_table(int big_n);

}  // namespace pstchain
