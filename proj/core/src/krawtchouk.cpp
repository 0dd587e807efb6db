#include "pstchain/krawtchouk.hpp"

#include <cmath>
#include <stdexcept>

#include "pstchain/chain.hpp"

namespace pstchain {

double pochhammer(double a, int k) {
  if (k < 0) {
    throw std::invalid_argument("pochhammer: negative index");
  }
  double product = 1.0;
  for (int j = 0; j < k; ++j) {
    product *= a + j;
  }
  return product;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int j = 1; j <= k; ++j) {
    result *= static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return result;
}

double hyp2f1_terminating(int n, int b, int big_n, double z) {
  if (n < 0 || b < 0 || big_n < 1) {
    throw std::invalid_argument("hyp2f1_terminating: parameters must be nonnegative, N >= 1");
  }
  if (n > big_n) {
    throw std::invalid_argument("hyp2f1_terminating: n > N makes the terminating ratio ill-defined");
  }
  const int terms = std::min(n, b);
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= terms; ++k) {
    // term_k / term_{k-1} = (-n+k-1)(-b+k-1) / ((-N+k-1) k) * z
    term *= (static_cast<double>(k - 1 - n) * (k - 1 - b)) /
            (static_cast<double>(k - 1 - big_n) * k) * z;
    sum += term;
  }
  return sum;
}

double krawtchouk_hypergeometric(int degree, int s, int big_n) {
  if (degree < 0 || degree > big_n || s < 0 || s > big_n) {
    throw std::invalid_argument("krawtchouk_hypergeometric: indices out of range");
  }
  const double sign = (degree % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(binomial(big_n, degree)) * hyp2f1_terminating(degree, s, big_n, 2.0);
}

std::vector<double> binomial_weights(int big_n) {
  if (big_n < 1) {
    throw std::invalid_argument("binomial_weights: N must be >= 1");
  }
  std::vector<double> weights(big_n + 1);
  for (int s = 0; s <= big_n; ++s) {
    weights[s] = std::ldexp(binomial(big_n, s), -big_n);
  }
  return weights;
}

KrawtchoukTable krawtchouk_table(int big_n) {
  if (big_n < 1) {
    throw std::invalid_argument("krawtchouk_table: N must be >= 1");
  }
  KrawtchoukTable table;
  table.n = big_n;
  table.weights = binomial_weights(big_n);
  table.values.assign(big_n + 1, std::vector<double>(big_n + 1, 0.0));

  const double half_n = 0.5 * big_n;
  for (int s = 0; s <= big_n; ++s) {
    table.values[0][s] = 1.0;
  }
  for (int degree = 0; degree < big_n; ++degree) {
    const double a_up = base_coupling(degree + 1, big_n);
    const double a_down = base_coupling(degree, big_n);  // zero when degree == 0
    for (int s = 0; s <= big_n; ++s) {
      const double lower = degree > 0 ? table.values[degree - 1][s] : 0.0;
      table.values[degree + 1][s] =
          ((s - half_n) * table.values[degree][s] - a_down * lower) / a_up;
    }
  }
  return table;
}

}  // namespace pstchain
