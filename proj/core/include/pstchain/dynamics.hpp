#pragma once

#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "pstchain/chain.hpp"
#include "pstchain/dense.hpp"
#include "pstchain/spectral.hpp"

namespace pstchain {

// Site amplitudes <k| exp(-i t q(J)) |source> at one instant.  The 2-norm is
// one whenever the spectral data is orthonormal.
struct AmplitudeVector {
  double t = 0.0;
  int source = 0;
  std::vector<std::complex<double>> amps;

  friend bool operator==(const AmplitudeVector&, const AmplitudeVector&) = default;
};

// Endpoint summary of the state evolved from site 0:
//   mu, nu     amplitudes at sites 0 and N
//   leakage    probability found away from the endpoints, 1 - |mu|^2 - |nu|^2
//   theta      atan2(|nu|, |mu|) in [0, pi/2]; pi/2 is transfer, 0 is return,
//              pi/4 is the balanced (maximally entangling) split
//   phi        phase of the dominant endpoint amplitude (mu at a balanced split)
//   rel_phase  arg(nu) - arg(mu) in (-pi, pi], only when both endpoints carry
//              amplitude; +-pi/2 whenever the endpoint pair exhausts the state
struct EndpointState {
  std::complex<double> mu{0.0, 0.0};
  std::complex<double> nu{0.0, 0.0};
  double leakage = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  std::optional<double> rel_phase;
};

// Time evolution by spectral synthesis over the eigenbasis of the base
// matrix:  amps[k] = sum_s exp(-i t q(x_s)) W_{s,source} W_{s,k}.  No series
// or Pade matrix exponentials anywhere; phases are exact per eigenvalue.
AmplitudeVector evolve(const SpectralData& data, const Quadratic& q, double t, int source = 0);

// Endpoint pair (amps[0], amps[N]) without forming the interior amplitudes;
// O(N) per time sample, used by the fidelity scans.
std::pair<std::complex<double>, std::complex<double>> endpoint_amplitudes(
    const SpectralData& data, const Quadratic& q, double t);

EndpointState endpoint_state(const SpectralData& data, const Quadratic& q, double t);

// Full propagator U(t) with U_{kl} = sum_s exp(-i t q(x_s)) W_sk W_sl.
ComplexMatrix propagator(const SpectralData& data, const Quadratic& q, double t);

struct MirrorInversionReport {
  bool pass = false;
  double phi = 0.0;           // candidate global phase, read off U_{N,0}
  double max_deviation = 0.0; // max |U_{kl} - exp(i phi) R_{kl}|
};

// Tests whether U(T) equals a global phase times the reflection, i.e. whether
// the chain mirror-inverts every one-excitation state at time T.
MirrorInversionReport verify_mirror_inversion(const SpectralData& data, const Quadratic& q,
                                              double t, double tol);

// JSON wire format: {"t", "source", "amps": [[re, im], ...]}.
void to_json(nlohmann::json& j, const AmplitudeVector& a);
void from_json(const nlohmann::json& j, AmplitudeVector& a);

}  // namespace pstchain
