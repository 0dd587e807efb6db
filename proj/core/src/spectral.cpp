#include "pstchain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pstchain/krawtchouk.hpp"

namespace pstchain {

std::vector<double> analytic_spectrum(int big_n) {
  if (big_n < 1) {
    throw std::invalid_argument("analytic_spectrum: N must be >= 1");
  }
  std::vector<double> xs(big_n + 1);
  for (int s = 0; s <= big_n; ++s) {
    xs[s] = s - 0.5 * big_n;
  }
  return xs;
}

SpectralData analytic_eigenbasis(int big_n) {
  const KrawtchoukTable table = krawtchouk_table(big_n);
  SpectralData data;
  data.eigenvalues = analytic_spectrum(big_n);
  data.weights = table.weights;
  data.vectors.assign(big_n + 1, std::vector<double>(big_n + 1, 0.0));
  data.parities.resize(big_n + 1);
  for (int s = 0; s <= big_n; ++s) {
    const double root_w = std::sqrt(table.weights[s]);
    for (int k = 0; k <= big_n; ++k) {
      data.vectors[s][k] = root_w * table.values[k][s];
    }
    data.parities[s] = ((big_n + s) % 2 == 0) ? 1 : -1;
  }
  return data;
}

namespace {

double off_diagonal_mass(const RealMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      sum += 2.0 * a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

void sign_normalize(std::vector<double>& v) {
  for (double c : v) {
    if (std::abs(c) > 1e-12) {
      if (c < 0.0) {
        for (double& x : v) x = -x;
      }
      return;
    }
  }
}

}  // namespace

SpectralData jacobi_eigensolve(const RealMatrix& matrix, double tol) {
  const std::size_t n = matrix.size();
  if (n == 0) {
    throw std::invalid_argument("jacobi_eigensolve: empty matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(matrix(i, j) - matrix(j, i)) > 1e-12) {
        throw std::invalid_argument("jacobi_eigensolve: input is not symmetric");
      }
    }
  }

  RealMatrix a = matrix;
  RealMatrix v = RealMatrix::identity(n);

  constexpr int kMaxSweeps = 30;
  bool converged = off_diagonal_mass(a) < tol;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from the stable quadratic formula.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i != p && i != q) {
            const double aip = a(i, p);
            const double aiq = a(i, q);
            a(i, p) = aip - s * (aiq + tau * aip);
            a(i, q) = aiq + s * (aip - tau * aiq);
            a(p, i) = a(i, p);
            a(q, i) = a(i, q);
          }
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = vip - s * (viq + tau * vip);
          v(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
    converged = off_diagonal_mass(a) < tol;
  }
  if (!converged) {
    throw std::runtime_error("jacobi_eigensolve: no convergence within the sweep budget");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](std::size_t lhs, std::size_t rhs) { return a(lhs, lhs) < a(rhs, rhs); });

  SpectralData data;
  data.eigenvalues.resize(n);
  data.vectors.assign(n, std::vector<double>(n, 0.0));
  data.weights.resize(n);
  data.parities.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t col = order[s];
    data.eigenvalues[s] = a(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      data.vectors[s][k] = v(k, col);
    }
    sign_normalize(data.vectors[s]);
    data.weights[s] = data.vectors[s][0] * data.vectors[s][0];
    // Reflection expectation <x_s|R|x_s>; a clean +-1 only for reflection
    // eigenstates, but the sign is still the best parity guess otherwise.
    double overlap = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      overlap += data.vectors[s][k] * data.vectors[s][n - 1 - k];
    }
    data.parities[s] = overlap >= 0.0 ? 1 : -1;
  }
  return data;
}

OrthoPolyTable orthopoly_table(const BandMatrix& jacobi, const std::vector<double>& eigenvalues) {
  if (jacobi.bandwidth() != 1) {
    throw std::invalid_argument("orthopoly_table: matrix must be tridiagonal");
  }
  const int big_n = jacobi.n;
  if (eigenvalues.size() != static_cast<std::size_t>(big_n + 1)) {
    throw std::invalid_argument("orthopoly_table: eigenvalue count must match matrix size");
  }
  for (int m = 1; m <= big_n; ++m) {
    if (!(jacobi.coupling(1, m) > 0.0)) {
      throw std::invalid_argument("orthopoly_table: zero off-diagonal coupling disconnects the chain");
    }
  }

  OrthoPolyTable table;
  table.values.assign(big_n + 1, std::vector<double>(big_n + 1, 0.0));
  table.gap_products.assign(big_n + 1, 1.0);
  for (int s = 0; s <= big_n; ++s) {
    table.values[0][s] = 1.0;
  }
  // J_{k+1} chi_{k+1} = (x - B_k) chi_k - J_k chi_{k-1}
  for (int k = 0; k < big_n; ++k) {
    const double j_up = jacobi.coupling(1, k + 1);
    const double j_down = jacobi.coupling(1, k);  // zero for k == 0
    for (int s = 0; s <= big_n; ++s) {
      const double lower = k > 0 ? table.values[k - 1][s] : 0.0;
      table.values[k + 1][s] =
          ((eigenvalues[s] - jacobi.diag[k]) * table.values[k][s] - j_down * lower) / j_up;
    }
  }
  table.coupling_product = 1.0;
  for (int m = 1; m <= big_n; ++m) {
    table.coupling_product *= jacobi.coupling(1, m);
  }
  for (int s = 0; s <= big_n; ++s) {
    double product = 1.0;
    for (int t = 0; t <= big_n; ++t) {
      if (t != s) product *= std::abs(eigenvalues[s] - eigenvalues[t]);
    }
    table.gap_products[s] = product;
  }
  return table;
}

std::vector<double> weights_from_spectrum(const OrthoPolyTable& table, bool mirror) {
  const std::size_t count = table.gap_products.size();
  const int big_n = static_cast<int>(count) - 1;
  std::vector<double> weights(count);
  for (int s = 0; s < static_cast<int>(count); ++s) {
    double w;
    if (mirror) {
      w = table.coupling_product / table.gap_products[s];
    } else {
      const double deriv_sign = ((big_n + s) % 2 == 0) ? 1.0 : -1.0;
      w = table.coupling_product /
          (table.values[big_n][s] * deriv_sign * table.gap_products[s]);
    }
    if (!(w > 0.0)) {
      throw std::runtime_error(
          "weights_from_spectrum: nonpositive weight; spectral data is inconsistent");
    }
    weights[s] = w;
  }
  return weights;
}

ParityReport reflection_parity_check(const SpectralData& data, double tol) {
  ParityReport report;
  const int big_n = static_cast<int>(data.size()) - 1;
  for (int s = 0; s <= big_n; ++s) {
    const double parity = ((big_n + s) % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k <= big_n; ++k) {
      const double violation =
          std::abs(data.vectors[s][big_n - k] - parity * data.vectors[s][k]);
      report.max_violation = std::max(report.max_violation, violation);
    }
  }
  report.pass = report.max_violation <= tol;
  return report;
}

}  // namespace pstchain
