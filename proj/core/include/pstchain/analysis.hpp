#pragma once

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pstchain/chain.hpp"
#include "pstchain/rational.hpp"

namespace pstchain {

// Times predicted by the certificates are exact rational multiples of pi
// divided by one of the two coupling strengths; keeping the symbolic form
// avoids a float round-trip between prediction and verification.
struct PiTime {
  Rational factor{1, 1};
  enum class Scale { beta, alpha } scale = Scale::beta;

  double seconds(double alpha, double beta) const;

  friend bool operator==(const PiTime&, const PiTime&) = default;
};

// What the endpoint pair looks like at a revival time: everything back at
// site 0, everything at site N, or the balanced 1/sqrt(2) split.
enum class RevivalClass { perfect_return, balanced, pst };

std::string to_string(RevivalClass c);

// Witness that the transfer quantization conditions are satisfiable for the
// reduced ratio p/q (p = 0 encodes the nearest-neighbour chain; the
// pure-quadratic branch drops the ratio entirely).  xi and eta are
// simultaneously integers or simultaneously half-integers and satisfy the
// exact relation q/p = (2 eta + 1)/(2 xi) + N whenever p > 0.
struct PstCertificate {
  std::int64_t p = 0;
  std::int64_t q = 1;
  bool pure_quadratic = false;
  Rational xi{0, 1};
  Rational eta{0, 1};
  PiTime time;
  std::string note;

  friend bool operator==(const PstCertificate&, const PstCertificate&) = default;
};

// Witness for revival at the endpoints.  The integer pair (xi0, eta0) fixes
// the revival class exactly: balanced precisely when xi0 is odd.  delta_zeta
// records the parity of the remaining free integer in the phase bookkeeping,
// chosen for the branch whose angle lies in [0, pi).
struct FrCertificate {
  std::int64_t p = 0;
  std::int64_t q = 1;
  bool pure_quadratic = false;
  std::int64_t xi0 = 0;
  std::int64_t eta0 = 0;
  int delta_zeta = 0;
  PiTime tau;
  RevivalClass theta_class = RevivalClass::balanced;

  friend bool operator==(const FrCertificate&, const FrCertificate&) = default;
};

// Named refusal explaining which condition ruled a certificate out.
struct Refusal {
  std::string code;    // "parity-mismatch", "even-numerator", "nn-chain",
                       // "odd-chain", "irrational-ratio", "two-site-undetermined"
  std::string detail;

  friend bool operator==(const Refusal&, const Refusal&) = default;
};

template <typename Cert>
struct Predicted {
  std::optional<Cert> certificate;
  Refusal refusal;  // code empty iff certificate present
  std::string note; // provenance caveats, e.g. ratio reconstructed from floats

  bool admissible() const noexcept { return certificate.has_value(); }
};

using PstPrediction = Predicted<PstCertificate>;
using FrPrediction = Predicted<FrCertificate>;

// Exact classification of the revival angle from the integer certificate:
// (xi0 + 2 eta0) mod 4 -> 0 return, 2 transfer, odd balanced.
RevivalClass revival_class(std::int64_t xi0, std::int64_t eta0);

// Transfer predicate for beta > 0 and reduced ratio alpha/beta = p/q.
// Admissible certificates exist exactly for p even (q odd by coprimality) or
// p odd with q and N of equal parity; the minimal time is pi q / beta and the
// remaining admissible times are its odd multiples (odd_multiple parameter).
// Throws std::invalid_argument for non-coprime p, q.
PstPrediction pst_predict(std::int64_t p, std::int64_t q, int big_n, std::int64_t odd_multiple = 1);

// Transfer predicate for the beta = 0 chain: transfer exists only for even N,
// with minimal time pi / alpha.
PstPrediction pst_predict_pure_quadratic(int big_n, std::int64_t odd_multiple = 1);

// Revival predicate for beta > 0: balanced revival exists iff p is odd and
// q, N have equal parity, at time tau = pi q / (2 beta).  Multiples k tau
// carry certificates (k xi0, k eta0) whose class alternates through the
// balanced / transfer / balanced / return cycle.
FrPrediction fr_predict(std::int64_t p, std::int64_t q, int big_n, std::int64_t multiple = 1);

// Revival predicate for beta = 0: balanced revival iff N is even, at
// tau = pi / (2 alpha).
FrPrediction fr_predict_pure_quadratic(int big_n, std::int64_t multiple = 1);

// Dispatchers resolving the exact ratio from the spec: a stored exact ratio
// is used as-is; otherwise alpha/beta is reconstructed by rationalize with
// tol 1e-9 and denominators up to 10^4, and failure to reconstruct is
// reported as the "irrational-ratio" refusal.
PstPrediction predict_pst(const ChainSpec& spec);
FrPrediction predict_fr(const ChainSpec& spec);

// Uniform-grid record of transfer fidelity |<N|U(t)|0>|^2 and endpoint
// probability |mu|^2 + |nu|^2.
struct FidelitySeries {
  std::vector<double> times;
  std::vector<double> fidelity;
  std::vector<double> endpoint_prob;

  friend bool operator==(const FidelitySeries&, const FidelitySeries&) = default;
};

FidelitySeries fidelity_scan(const ChainSpec& spec, double t_max, int steps);

// CSV with header "t,fidelity,endpoint_prob" and 17-significant-digit
// decimals, enough for a lossless double round-trip.
std::string to_csv(const FidelitySeries& series);
FidelitySeries fidelity_series_from_csv(const std::string& text);

struct CyclePhase {
  std::string label;  // "fr", "pst", "fr", "return"
  double t = 0.0;
  double mu_abs = 0.0;
  double nu_abs = 0.0;
  double leakage = 0.0;
  std::optional<double> rel_phase;
  bool pass = false;
};

struct CycleReport {
  bool pass = false;
  double tau = 0.0;
  std::array<CyclePhase, 4> phases;
};

// Dynamical check of the four-beat revival cycle implied by a balanced
// certificate: balanced split at tau and 3 tau (with no leakage), full
// transfer at 2 tau, full return at 4 tau, all within tol.
CycleReport cycle_verify(const ChainSpec& spec, const FrCertificate& cert, double tol);

void to_json(nlohmann::json& j, const PiTime& t);
void from_json(const nlohmann::json& j, PiTime& t);
void to_json(nlohmann::json& j, const PstCertificate& c);
void from_json(const nlohmann::json& j, PstCertificate& c);
void to_json(nlohmann::json& j, const FrCertificate& c);
void from_json(const nlohmann::json& j, FrCertificate& c);
void to_json(nlohmann::json& j, const FidelitySeries& s);
void from_json(const nlohmann::json& j, FidelitySeries& s);
void to_json(nlohmann::json& j, const CycleReport& r);

}  // namespace pstchain
