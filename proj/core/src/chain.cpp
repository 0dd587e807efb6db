#include "pstchain/chain.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace pstchain {

void validate(const ChainSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("ChainSpec: n must be >= 1");
  }
  if (!(spec.alpha >= 0.0) || !(spec.beta >= 0.0)) {
    throw std::invalid_argument("ChainSpec: alpha and beta must be nonnegative");
  }
  if (spec.alpha == 0.0 && spec.beta == 0.0) {
    throw std::invalid_argument("ChainSpec: alpha and beta cannot both vanish");
  }
  if (spec.ratio) {
    if (spec.beta == 0.0) {
      throw std::invalid_argument("ChainSpec: ratio is meaningless when beta == 0");
    }
    if (spec.ratio->den < 1) {
      throw std::invalid_argument("ChainSpec: ratio denominator must be positive");
    }
    const double stated = spec.ratio->value();
    if (std::abs(spec.alpha / spec.beta - stated) >= 1e-12) {
      throw std::invalid_argument("ChainSpec: ratio disagrees with alpha/beta");
    }
  }
}

double BandMatrix::coupling(int k, int m) const {
  if (k < 1 || k > bandwidth()) return 0.0;
  if (m < k || m > n) return 0.0;
  return bands[k - 1][m - k];
}

RealMatrix BandMatrix::to_dense() const {
  RealMatrix dense(size());
  for (int i = 0; i <= n; ++i) {
    dense(i, i) = diag[i];
  }
  for (int k = 1; k <= bandwidth(); ++k) {
    for (int m = k; m <= n; ++m) {
      dense(m - k, m) = coupling(k, m);
      dense(m, m - k) = coupling(k, m);
    }
  }
  return dense;
}

double base_coupling(int site, int big_n) {
  if (site <= 0 || site > big_n) return 0.0;
  return 0.5 * std::sqrt(static_cast<double>(site) * (big_n - site + 1));
}

BandMatrix base_jacobi(int big_n) {
  if (big_n < 1) {
    throw std::invalid_argument("base_jacobi: N must be >= 1");
  }
  BandMatrix m;
  m.n = big_n;
  m.diag.assign(big_n + 1, 0.0);
  m.bands.resize(1);
  m.bands[0].resize(big_n);
  for (int site = 1; site <= big_n; ++site) {
    m.bands[0][site - 1] = base_coupling(site, big_n);
  }
  return m;
}

BandMatrix build_hamiltonian(const ChainSpec& spec) {
  validate(spec);
  const int big_n = spec.n;

  BandMatrix h;
  h.n = big_n;
  h.diag.assign(big_n + 1, 0.0);
  h.bands.resize(spec.alpha == 0.0 ? 1 : 2);

  h.bands[0].resize(big_n);
  for (int m = 1; m <= big_n; ++m) {
    h.bands[0][m - 1] = spec.beta * base_coupling(m, big_n);
  }
  if (spec.alpha != 0.0) {
    h.bands[1].resize(big_n - 1);
    for (int m = 2; m <= big_n; ++m) {
      h.bands[1][m - 2] = spec.alpha * base_coupling(m - 1, big_n) * base_coupling(m, big_n);
    }
    for (int i = 0; i <= big_n; ++i) {
      const double a_lo = base_coupling(i, big_n);
      const double a_hi = base_coupling(i + 1, big_n);
      h.diag[i] = spec.alpha * (a_lo * a_lo + a_hi * a_hi);
    }
  }
  return h;
}

RealMatrix reflection_matrix(int big_n) {
  if (big_n < 1) {
    throw std::invalid_argument("reflection_matrix: N must be >= 1");
  }
  RealMatrix r(big_n + 1);
  for (int i = 0; i <= big_n; ++i) {
    r(i, big_n - i) = 1.0;
  }
  return r;
}

MirrorReport mirror_symmetry_check(const BandMatrix& h, double tol) {
  MirrorReport report;
  for (int i = 0; i <= h.n; ++i) {
    report.max_violation =
        std::max(report.max_violation, std::abs(h.diag[i] - h.diag[h.n - i]));
  }
  for (int k = 1; k <= h.bandwidth(); ++k) {
    for (int m = k; m <= h.n; ++m) {
      report.max_violation = std::max(
          report.max_violation, std::abs(h.coupling(k, m) - h.coupling(k, h.n - m + k)));
    }
  }
  report.mirror_symmetric = report.max_violation <= tol;
  return report;
}

void to_json(nlohmann::json& j, const BandMatrix& m) {
  j = nlohmann::json{
      {"n_sites", m.n + 1},
      {"bandwidth", m.bandwidth()},
      {"diag", m.diag},
      {"band1", m.bandwidth() >= 1 ? m.bands[0] : std::vector<double>{}},
      {"band2", m.bandwidth() >= 2 ? m.bands[1] : std::vector<double>{}},
  };
}

void from_json(const nlohmann::json& j, BandMatrix& m) {
  const int n_sites = j.at("n_sites").get<int>();
  if (n_sites < 2) {
    throw std::invalid_argument("BandMatrix: n_sites must be >= 2");
  }
  m.n = n_sites - 1;
  m.diag = j.at("diag").get<std::vector<double>>();
  if (m.diag.size() != static_cast<std::size_t>(n_sites)) {
    throw std::invalid_argument("BandMatrix: diag length must equal n_sites");
  }
  const int bandwidth = j.at("bandwidth").get<int>();
  m.bands.clear();
  if (bandwidth >= 1) m.bands.push_back(j.at("band1").get<std::vector<double>>());
  if (bandwidth >= 2) m.bands.push_back(j.at("band2").get<std::vector<double>>());
  for (int k = 1; k <= m.bandwidth(); ++k) {
    if (m.bands[k - 1].size() != static_cast<std::size_t>(m.n - k + 1)) {
      throw std::invalid_argument("BandMatrix: band length must be n_sites - k");
    }
  }
}

}  // namespace pstchain
