#include "pstchain/dynamics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pstchain {

namespace {

std::complex<double> phase_factor(const Quadratic& q, double x, double t) {
  return std::polar(1.0, -t * q(x));
}

constexpr double kAmplitudeFloor = 1e-12;

}  // namespace

AmplitudeVector evolve(const SpectralData& data, const Quadratic& q, double t, int source) {
  const int dim = static_cast<int>(data.size());
  if (source < 0 || source >= dim) {
    throw std::invalid_argument("evolve: source site out of range");
  }
  AmplitudeVector result;
  result.t = t;
  result.source = source;
  result.amps.assign(dim, {0.0, 0.0});
  for (int s = 0; s < dim; ++s) {
    const std::complex<double> phase =
        phase_factor(q, data.eigenvalues[s], t) * data.vectors[s][source];
    for (int k = 0; k < dim; ++k) {
      result.amps[k] += phase * data.vectors[s][k];
    }
  }
  return result;
}

std::pair<std::complex<double>, std::complex<double>> endpoint_amplitudes(
    const SpectralData& data, const Quadratic& q, double t) {
  const int last = static_cast<int>(data.size()) - 1;
  std::complex<double> mu{0.0, 0.0};
  std::complex<double> nu{0.0, 0.0};
  for (int s = 0; s <= last; ++s) {
    const std::complex<double> phase =
        phase_factor(q, data.eigenvalues[s], t) * data.vectors[s][0];
    mu += phase * data.vectors[s][0];
    nu += phase * data.vectors[s][last];
  }
  return {mu, nu};
}

EndpointState endpoint_state(const SpectralData& data, const Quadratic& q, double t) {
  const auto [mu, nu] = endpoint_amplitudes(data, q, t);
  EndpointState state;
  state.mu = mu;
  state.nu = nu;
  const double mu_abs = std::abs(mu);
  const double nu_abs = std::abs(nu);
  state.leakage = 1.0 - mu_abs * mu_abs - nu_abs * nu_abs;
  state.theta = std::atan2(nu_abs, mu_abs);
  // At a balanced split the convention is phi = arg(mu).
  state.phi = (mu_abs >= nu_abs - 1e-9) ? std::arg(mu) : std::arg(nu);
  if (mu_abs > kAmplitudeFloor && nu_abs > kAmplitudeFloor) {
    double rel = std::arg(nu) - std::arg(mu);
    if (rel > std::numbers::pi) rel -= 2.0 * std::numbers::pi;
    if (rel <= -std::numbers::pi) rel += 2.0 * std::numbers::pi;
    state.rel_phase = rel;
  }
  return state;
}

ComplexMatrix propagator(const SpectralData& data, const Quadratic& q, double t) {
  const int dim = static_cast<int>(data.size());
  ComplexMatrix u(dim);
  for (int s = 0; s < dim; ++s) {
    const std::complex<double> phase = phase_factor(q, data.eigenvalues[s], t);
    for (int k = 0; k < dim; ++k) {
      const std::complex<double> row = phase * data.vectors[s][k];
      for (int l = 0; l < dim; ++l) {
        u(k, l) += row * data.vectors[s][l];
      }
    }
  }
  return u;
}

MirrorInversionReport verify_mirror_inversion(const SpectralData& data, const Quadratic& q,
                                              double t, double tol) {
  const int last = static_cast<int>(data.size()) - 1;
  const ComplexMatrix u = propagator(data, q, t);
  MirrorInversionReport report;
  report.phi = std::arg(u(last, 0));
  const std::complex<double> global = std::polar(1.0, report.phi);
  for (int k = 0; k <= last; ++k) {
    for (int l = 0; l <= last; ++l) {
      const std::complex<double> expected = (k == last - l) ? global : std::complex<double>{};
      report.max_deviation = std::max(report.max_deviation, std::abs(u(k, l) - expected));
    }
  }
  report.pass = report.max_deviation < tol;
  return report;
}

void to_json(nlohmann::json& j, const AmplitudeVector& a) {
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& amp : a.amps) {
    amps.push_back({amp.real(), amp.imag()});
  }
  j = nlohmann::json{{"t", a.t}, {"source", a.source}, {"amps", std::move(amps)}};
}

void from_json(const nlohmann::json& j, AmplitudeVector& a) {
  a.t = j.at("t").get<double>();
  a.source = j.at("source").get<int>();
  a.amps.clear();
  for (const auto& pair : j.at("amps")) {
    a.amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
}

}  // namespace pstchain
