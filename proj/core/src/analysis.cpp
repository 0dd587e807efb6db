#include "pstchain/analysis.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pstchain/dynamics.hpp"
#include "pstchain/spectral.hpp"

namespace pstchain {

double PiTime::seconds(double alpha, double beta) const {
  const double denom = scale == Scale::beta ? beta : alpha;
  if (!(denom > 0.0)) {
    throw std::invalid_argument("PiTime: the scaling coupling must be positive");
  }
  return std::numbers::pi * factor.value() / denom;
}

std::string to_string(RevivalClass c) {
  switch (c) {
    case RevivalClass::perfect_return: return "return";
    case RevivalClass::balanced: return "balanced";
    case RevivalClass::pst: return "pst";
  }
  return "unknown";
}

namespace {

std::int64_t positive_mod(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

// Parity of the free bookkeeping integer for the branch whose angle lies in
// [0, pi).  The angle in quarter turns is +-(xi0 + 2 eta0 + 4 dz) mod 8 with
// the sign set by the parity of N.
int canonical_delta_zeta(std::int64_t xi0, std::int64_t eta0, int big_n) {
  const std::int64_t b = positive_mod(xi0 + 2 * eta0, 8);
  if (big_n % 2 == 0) {
    return b < 4 ? 0 : 1;
  }
  return (b == 0 || b >= 5) ? 0 : 1;
}

void require_coprime(std::int64_t p, std::int64_t q) {
  if (p < 0 || q < 1) {
    throw std::invalid_argument("ratio must satisfy p >= 0, q >= 1");
  }
  if (std::gcd(p, q) != 1) {
    throw std::invalid_argument("ratio must be in lowest terms (p, q coprime)");
  }
}

}  // namespace

RevivalClass revival_class(std::int64_t xi0, std::int64_t eta0) {
  switch (positive_mod(xi0 + 2 * eta0, 4)) {
    case 0: return RevivalClass::perfect_return;
    case 2: return RevivalClass::pst;
    default: return RevivalClass::balanced;
  }
}

PstPrediction pst_predict(std::int64_t p, std::int64_t q, int big_n, std::int64_t odd_multiple) {
  require_coprime(p, q);
  if (big_n < 1) {
    throw std::invalid_argument("pst_predict: N must be >= 1");
  }
  if (odd_multiple < 1 || odd_multiple % 2 == 0) {
    throw std::invalid_argument("pst_predict: admissible times are odd multiples of the base time");
  }

  PstPrediction out;
  // p odd needs q and N of equal parity for eta to match xi's half-integer
  // character; p even forces q odd by coprimality and is always admissible.
  if (p % 2 != 0 && (q - big_n) % 2 != 0) {
    out.refusal = {"parity-mismatch",
                   "p odd requires q and N of equal parity; got q " +
                       std::string(q % 2 == 0 ? "even" : "odd") + ", N " +
                       (big_n % 2 == 0 ? "even" : "odd")};
    return out;
  }

  PstCertificate cert;
  cert.p = p;
  cert.q = q;
  cert.xi = Rational(odd_multiple * p, 2);
  cert.eta = Rational(odd_multiple * (q - big_n * p) - 1, 2);
  cert.time = {Rational(odd_multiple * q, 1), PiTime::Scale::beta};
  if (p == 0) {
    cert.note = "nearest-neighbour chain; transfer at every odd multiple of pi/beta";
  } else if (p % 2 == 0) {
    cert.note = "p even, q odd";
  } else {
    cert.note = std::string("p odd with q and N both ") + (big_n % 2 == 0 ? "even" : "odd");
  }
  out.certificate = std::move(cert);
  return out;
}

PstPrediction pst_predict_pure_quadratic(int big_n, std::int64_t odd_multiple) {
  if (big_n < 1) {
    throw std::invalid_argument("pst_predict_pure_quadratic: N must be >= 1");
  }
  if (odd_multiple < 1 || odd_multiple % 2 == 0) {
    throw std::invalid_argument(
        "pst_predict_pure_quadratic: admissible times are odd multiples of the base time");
  }
  PstPrediction out;
  if (big_n % 2 != 0) {
    out.refusal = {"odd-chain", "the purely quadratic chain transfers only for even N"};
    return out;
  }
  PstCertificate cert;
  cert.pure_quadratic = true;
  cert.xi = Rational(odd_multiple, 2);
  cert.eta = Rational(-(odd_multiple * big_n + 1), 2);
  cert.time = {Rational(odd_multiple, 1), PiTime::Scale::alpha};
  cert.note = "pure-quadratic chain, N even";
  out.certificate = std::move(cert);
  return out;
}

FrPrediction fr_predict(std::int64_t p, std::int64_t q, int big_n, std::int64_t multiple) {
  require_coprime(p, q);
  if (big_n < 1) {
    throw std::invalid_argument("fr_predict: N must be >= 1");
  }
  if (multiple < 1) {
    throw std::invalid_argument("fr_predict: multiple must be >= 1");
  }

  FrPrediction out;
  if (p == 0) {
    if (big_n == 1) {
      out.refusal = {"two-site-undetermined",
                     "the two-site nearest-neighbour chain has adjacent endpoints; the "
                     "integer-linear argument does not apply and no prediction is made"};
    } else {
      out.refusal = {"nn-chain",
                     "the nearest-neighbour chain admits only transfer and return at the endpoints"};
    }
    return out;
  }
  if (p % 2 == 0) {
    out.refusal = {"even-numerator", "revival requires p odd; transfer may still occur"};
    return out;
  }
  if ((q - big_n) % 2 != 0) {
    out.refusal = {"parity-mismatch",
                   "p odd requires q and N of equal parity; got q " +
                       std::string(q % 2 == 0 ? "even" : "odd") + ", N " +
                       (big_n % 2 == 0 ? "even" : "odd")};
    return out;
  }

  FrCertificate cert;
  cert.p = p;
  cert.q = q;
  cert.xi0 = multiple * p;
  cert.eta0 = multiple * (q - big_n * p) / 2;
  cert.delta_zeta = canonical_delta_zeta(cert.xi0, cert.eta0, big_n);
  cert.tau = {Rational(multiple * q, 2), PiTime::Scale::beta};
  cert.theta_class = revival_class(cert.xi0, cert.eta0);
  out.certificate = std::move(cert);
  return out;
}

FrPrediction fr_predict_pure_quadratic(int big_n, std::int64_t multiple) {
  if (big_n < 1) {
    throw std::invalid_argument("fr_predict_pure_quadratic: N must be >= 1");
  }
  if (multiple < 1) {
    throw std::invalid_argument("fr_predict_pure_quadratic: multiple must be >= 1");
  }
  FrPrediction out;
  if (big_n % 2 != 0) {
    out.refusal = {"odd-chain", "the purely quadratic chain revives only for even N"};
    return out;
  }
  FrCertificate cert;
  cert.pure_quadratic = true;
  cert.xi0 = multiple;
  cert.eta0 = -multiple * big_n / 2;
  cert.delta_zeta = canonical_delta_zeta(cert.xi0, cert.eta0, big_n);
  cert.tau = {Rational(multiple, 2), PiTime::Scale::alpha};
  cert.theta_class = revival_class(cert.xi0, cert.eta0);
  out.certificate = std::move(cert);
  return out;
}

namespace {

// Resolves the exact reduced ratio for a beta > 0 spec, preferring the stored
// exact value over a float reconstruction.
struct ResolvedRatio {
  std::optional<Rational> ratio;
  std::string note;
};

ResolvedRatio resolve_ratio(const ChainSpec& spec) {
  if (spec.ratio) {
    return {spec.ratio, ""};
  }
  const auto guess = rationalize(spec.alpha / spec.beta);
  if (!guess) {
    return {std::nullopt, ""};
  }
  return {guess, "ratio " + to_string(*guess) + " reconstructed from alpha/beta in floating point"};
}

}  // namespace

PstPrediction predict_pst(const ChainSpec& spec) {
  validate(spec);
  if (spec.beta == 0.0) {
    return pst_predict_pure_quadratic(spec.n);
  }
  const ResolvedRatio resolved = resolve_ratio(spec);
  if (!resolved.ratio) {
    return {std::nullopt,
            {"irrational-ratio",
             "no rational p/q within 1e-9 of alpha/beta with denominator <= 10^4"},
            ""};
  }
  PstPrediction out = pst_predict(resolved.ratio->num, resolved.ratio->den, spec.n);
  out.note = resolved.note;
  return out;
}

FrPrediction predict_fr(const ChainSpec& spec) {
  validate(spec);
  if (spec.beta == 0.0) {
    return fr_predict_pure_quadratic(spec.n);
  }
  const ResolvedRatio resolved = resolve_ratio(spec);
  if (!resolved.ratio) {
    return {std::nullopt,
            {"irrational-ratio",
             "no rational p/q within 1e-9 of alpha/beta with denominator <= 10^4"},
            ""};
  }
  FrPrediction out = fr_predict(resolved.ratio->num, resolved.ratio->den, spec.n);
  out.note = resolved.note;
  return out;
}

FidelitySeries fidelity_scan(const ChainSpec& spec, double t_max, int steps) {
  validate(spec);
  if (steps < 2) {
    throw std::invalid_argument("fidelity_scan: steps must be >= 2");
  }
  if (!(t_max > 0.0)) {
    throw std::invalid_argument("fidelity_scan: t_max must be positive");
  }
  const SpectralData basis = analytic_eigenbasis(spec.n);
  const Quadratic q = spec.q();
  FidelitySeries series;
  series.times.resize(steps);
  series.fidelity.resize(steps);
  series.endpoint_prob.resize(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
    const auto [mu, nu] = endpoint_amplitudes(basis, q, t);
    series.times[i] = t;
    series.fidelity[i] = std::norm(nu);
    series.endpoint_prob[i] = std::norm(mu) + std::norm(nu);
  }
  return series;
}

std::string to_csv(const FidelitySeries& series) {
  std::string out = "t,fidelity,endpoint_prob\n";
  char line[128];
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", series.times[i],
                  series.fidelity[i], series.endpoint_prob[i]);
    out += line;
  }
  return out;
}

FidelitySeries fidelity_series_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "t,fidelity,endpoint_prob") {
    throw std::invalid_argument("fidelity_series_from_csv: missing header");
  }
  FidelitySeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t = 0.0, f = 0.0, e = 0.0;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &t, &f, &e) != 3) {
      throw std::invalid_argument("fidelity_series_from_csv: malformed row: " + line);
    }
    series.times.push_back(t);
    series.fidelity.push_back(f);
    series.endpoint_prob.push_back(e);
  }
  return series;
}

CycleReport cycle_verify(const ChainSpec& spec, const FrCertificate& cert, double tol) {
  validate(spec);
  if (cert.theta_class != RevivalClass::balanced) {
    throw std::invalid_argument("cycle_verify: certificate must be of the balanced class");
  }
  const SpectralData basis = analytic_eigenbasis(spec.n);
  const Quadratic q = spec.q();
  const double tau = cert.tau.seconds(spec.alpha, spec.beta);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  CycleReport report;
  report.tau = tau;
  const std::array<std::string, 4> labels = {"fr", "pst", "fr", "return"};
  bool all_pass = true;
  for (int k = 1; k <= 4; ++k) {
    const double t = k * tau;
    const EndpointState state = endpoint_state(basis, q, t);
    CyclePhase phase;
    phase.label = labels[k - 1];
    phase.t = t;
    phase.mu_abs = std::abs(state.mu);
    phase.nu_abs = std::abs(state.nu);
    phase.leakage = state.leakage;
    phase.rel_phase = state.rel_phase;
    switch (k) {
      case 1:
      case 3:
        phase.pass = std::abs(phase.mu_abs - inv_sqrt2) <= tol &&
                     std::abs(phase.nu_abs - inv_sqrt2) <= tol && state.leakage < tol;
        break;
      case 2:
        phase.pass = std::abs(phase.nu_abs - 1.0) <= tol;
        break;
      default:
        phase.pass = std::abs(phase.mu_abs - 1.0) <= tol;
        break;
    }
    all_pass = all_pass && phase.pass;
    report.phases[k - 1] = std::move(phase);
  }
  report.pass = all_pass;
  return report;
}

void to_json(nlohmann::json& j, const PiTime& t) {
  j = nlohmann::json{{"factor", {{"num", t.factor.num}, {"den", t.factor.den}}},
                     {"scale", t.scale == PiTime::Scale::beta ? "beta" : "alpha"}};
}

void from_json(const nlohmann::json& j, PiTime& t) {
  t.factor = Rational(j.at("factor").at("num").get<std::int64_t>(),
                      j.at("factor").at("den").get<std::int64_t>());
  const std::string scale = j.at("scale").get<std::string>();
  if (scale == "beta") {
    t.scale = PiTime::Scale::beta;
  } else if (scale == "alpha") {
    t.scale = PiTime::Scale::alpha;
  } else {
    throw std::invalid_argument("PiTime: unknown scale " + scale);
  }
}

void to_json(nlohmann::json& j, const PstCertificate& c) {
  j = nlohmann::json{{"type", "pst"},
                     {"p", c.p},
                     {"q", c.q},
                     {"pure_quadratic", c.pure_quadratic},
                     {"xi", {{"num", c.xi.num}, {"den", c.xi.den}}},
                     {"eta", {{"num", c.eta.num}, {"den", c.eta.den}}},
                     {"time", c.time},
                     {"note", c.note}};
}

void from_json(const nlohmann::json& j, PstCertificate& c) {
  c.p = j.at("p").get<std::int64_t>();
  c.q = j.at("q").get<std::int64_t>();
  c.pure_quadratic = j.at("pure_quadratic").get<bool>();
  c.xi = Rational(j.at("xi").at("num").get<std::int64_t>(),
                  j.at("xi").at("den").get<std::int64_t>());
  c.eta = Rational(j.at("eta").at("num").get<std::int64_t>(),
                   j.at("eta").at("den").get<std::int64_t>());
  c.time = j.at("time").get<PiTime>();
  c.note = j.value("note", "");
}

void to_json(nlohmann::json& j, const FrCertificate& c) {
  j = nlohmann::json{{"type", "fr"},
                     {"p", c.p},
                     {"q", c.q},
                     {"pure_quadratic", c.pure_quadratic},
                     {"xi0", c.xi0},
                     {"eta0", c.eta0},
                     {"delta_zeta", c.delta_zeta},
                     {"tau", c.tau},
                     {"theta_class", to_string(c.theta_class)}};
}

void from_json(const nlohmann::json& j, FrCertificate& c) {
  c.p = j.at("p").get<std::int64_t>();
  c.q = j.at("q").get<std::int64_t>();
  c.pure_quadratic = j.at("pure_quadratic").get<bool>();
  c.xi0 = j.at("xi0").get<std::int64_t>();
  c.eta0 = j.at("eta0").get<std::int64_t>();
  c.delta_zeta = j.at("delta_zeta").get<int>();
  c.tau = j.at("tau").get<PiTime>();
  const std::string cls = j.at("theta_class").get<std::string>();
  if (cls == "return") {
    c.theta_class = RevivalClass::perfect_return;
  } else if (cls == "balanced") {
    c.theta_class = RevivalClass::balanced;
  } else if (cls == "pst") {
    c.theta_class = RevivalClass::pst;
  } else {
    throw std::invalid_argument("FrCertificate: unknown theta_class " + cls);
  }
}

void to_json(nlohmann::json& j, const FidelitySeries& s) {
  j = nlohmann::json{
      {"times", s.times}, {"fidelity", s.fidelity}, {"endpoint_prob", s.endpoint_prob}};
}

void from_json(const nlohmann::json& j, FidelitySeries& s) {
  s.times = j.at("times").get<std::vector<double>>();
  s.fidelity = j.at("fidelity").get<std::vector<double>>();
  s.endpoint_prob = j.at("endpoint_prob").get<std::vector<double>>();
}

void to_json(nlohmann::json& j, const CycleReport& r) {
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& phase : r.phases) {
    nlohmann::json row{{"label", phase.label},
                       {"t", phase.t},
                       {"mu_abs", phase.mu_abs},
                       {"nu_abs", phase.nu_abs},
                       {"leakage", phase.leakage},
                       {"pass", phase.pass}};
    if (phase.rel_phase) {
      row["rel_phase"] = *phase.rel_phase;
    }
    phases.push_back(std::move(row));
  }
  j = nlohmann::json{{"pass", r.pass}, {"tau", r.tau}, {"phases", std::move(phases)}};
}

}  // namespace pstchain
