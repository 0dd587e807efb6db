#include "pstchain/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <regex>

#include "pstchain/analysis.hpp"
#include "pstchain/chain.hpp"
#include "pstchain/dynamics.hpp"
#include "pstchain/spectral.hpp"

namespace pstchain {

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"command", c.command}, {"N", c.n},          {"alpha", c.alpha},
                     {"beta", c.beta},       {"t", c.t},          {"t_max", c.t_max},
                     {"steps", c.steps},     {"output", c.output}, {"format", c.format},
                     {"tol", c.tol}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  c.command = j.value("command", c.command);
  c.n = j.value("N", c.n);
  c.alpha = j.value("alpha", c.alpha);
  c.beta = j.value("beta", c.beta);
  c.t = j.value("t", c.t);
  c.t_max = j.value("t_max", c.t_max);
  c.steps = j.value("steps", c.steps);
  c.output = j.value("output", c.output);
  c.format = j.value("format", c.format);
  c.tol = j.value("tol", c.tol);
}

Parameter parse_parameter(const std::string& text) {
  if (const auto exact = parse_rational(text)) {
    return {exact->value(), exact};
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return {value, std::nullopt};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse coupling parameter '" + text +
                                "' (expected a real number or an exact p/q)");
  }
}

double parse_time_expr(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([0-9]*\.?[0-9]+)?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)",
                                  std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double coeff = m[1].matched ? std::stod(m[1].str()) : 1.0;
    const double denom = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (denom == 0.0) {
      throw std::invalid_argument("zero denominator in time expression '" + text + "'");
    }
    return coeff * std::numbers::pi / denom;
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse time '" + text +
                                "' (expected a real number or multiple-of-pi syntax like pi/2)");
  }
}

std::string format_pi_time(double t) {
  char buffer[64];
  if (t == 0.0) {
    return "0";
  }
  if (const auto factor = rationalize(t / std::numbers::pi, 1e-12, 1000);
      factor && std::abs(t - factor->value() * std::numbers::pi) <= 1e-12 * std::max(1.0, std::abs(t))) {
    std::string head;
    if (factor->num == 1) {
      head = "pi";
    } else if (factor->num == -1) {
      head = "-pi";
    } else {
      head = std::to_string(factor->num) + "pi";
    }
    if (factor->den == 1) {
      return head;
    }
    return head + "/" + std::to_string(factor->den);
  }
  std::snprintf(buffer, sizeof(buffer), "%.17g", t);
  return buffer;
}

namespace {

const std::vector<std::string> kCommands = {"couplings", "spectrum",  "evolve", "scan",
                                            "check-pst", "check-fr", "cycle"};

double default_tolerance() {
  if (const char* env = std::getenv("PSTCHAIN_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0)) {
      throw UsageError("PSTCHAIN_TOL must be a positive real number, got '" + std::string(env) + "'");
    }
    return value;
  }
  return 1e-9;
}

struct FlagCapture {
  std::optional<int> n;
  std::optional<std::string> alpha, beta, t, t_max, output, format;
  std::optional<int> steps;
  std::optional<double> tol;
};

ChainSpec spec_from_config(const RunConfig& config) {
  const Parameter alpha = parse_parameter(config.alpha);
  const Parameter beta = parse_parameter(config.beta);
  ChainSpec spec;
  spec.n = config.n;
  spec.alpha = alpha.value;
  spec.beta = beta.value;
  if (beta.value > 0.0 && alpha.exact && beta.exact) {
    spec.ratio = *alpha.exact / *beta.exact;
  }
  validate(spec);
  return spec;
}

void write_payload(const RunConfig& config, const std::string& payload, std::ostream& out) {
  if (config.output.empty()) {
    out << payload;
    return;
  }
  const std::string tmp = config.output + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) {
      throw UsageError("cannot open '" + tmp + "' for writing");
    }
    file << payload;
    if (!file.good()) {
      throw UsageError("failed while writing '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), config.output.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw UsageError("cannot move '" + tmp + "' into place at '" + config.output + "'");
  }
}

std::string resolved_format(const RunConfig& config) {
  if (!config.format.empty()) {
    return config.format;
  }
  return config.command == "scan" ? "csv" : "json";
}

nlohmann::json ratio_json(const ChainSpec& spec) {
  if (spec.beta == 0.0) {
    return "pure-quadratic";
  }
  if (spec.ratio) {
    return {{"p", spec.ratio->num}, {"q", spec.ratio->den}};
  }
  if (const auto guess = rationalize(spec.alpha / spec.beta)) {
    return {{"p", guess->num}, {"q", guess->den}};
  }
  return "irrational";
}

int run_checked(const RunConfig& config, std::ostream& out) {
  const std::string format = resolved_format(config);
  if (format != "json" && format != "csv") {
    throw UsageError("unknown format '" + format + "' (expected csv or json)");
  }
  if (format == "csv" && config.command != "scan") {
    throw UsageError("csv output is only available for scan");
  }
  if (!(config.tol > 0.0)) {
    throw UsageError("tol must be positive");
  }

  const ChainSpec spec = [&config] {
    try {
      return spec_from_config(config);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  nlohmann::json body;
  std::string payload;
  int exit_code = 0;

  if (config.command == "couplings") {
    body = build_hamiltonian(spec);
  } else if (config.command == "spectrum") {
    const SpectralData basis = analytic_eigenbasis(spec.n);
    std::vector<double> energies(basis.size());
    const Quadratic q = spec.q();
    for (std::size_t s = 0; s < basis.size(); ++s) {
      energies[s] = q(basis.eigenvalues[s]);
    }
    body = nlohmann::json{{"n", spec.n},
                          {"alpha", spec.alpha},
                          {"beta", spec.beta},
                          {"base_eigenvalues", basis.eigenvalues},
                          {"energies", energies},
                          {"weights", basis.weights}};
  } else if (config.command == "evolve") {
    if (config.t.empty()) {
      throw UsageError("evolve requires --t");
    }
    const double t = parse_time_expr(config.t);
    if (t < 0.0) {
      throw UsageError("evolve requires t >= 0");
    }
    const SpectralData basis = analytic_eigenbasis(spec.n);
    body = evolve(basis, spec.q(), t, 0);
  } else if (config.command == "scan") {
    if (config.t_max.empty()) {
      throw UsageError("scan requires --t-max");
    }
    const double t_max = parse_time_expr(config.t_max);
    if (!(t_max > 0.0)) {
      throw UsageError("scan requires t_max > 0");
    }
    if (config.steps < 2) {
      throw UsageError("scan requires steps >= 2");
    }
    const FidelitySeries series = fidelity_scan(spec, t_max, config.steps);
    if (format == "csv") {
      payload = to_csv(series);
    } else {
      body = series;
    }
  } else if (config.command == "check-pst") {
    const PstPrediction prediction = predict_pst(spec);
    body = nlohmann::json{{"command", "check-pst"},
                          {"n", spec.n},
                          {"alpha", spec.alpha},
                          {"beta", spec.beta},
                          {"ratio", ratio_json(spec)}};
    if (!prediction.note.empty()) {
      body["note"] = prediction.note;
    }
    if (prediction.admissible()) {
      const double seconds = prediction.certificate->time.seconds(spec.alpha, spec.beta);
      body["certificate"] = *prediction.certificate;
      body["time_seconds"] = seconds;
      body["time_display"] = format_pi_time(seconds);
    } else {
      body["refusal"] = {{"code", prediction.refusal.code}, {"detail", prediction.refusal.detail}};
      exit_code = 2;
    }
  } else if (config.command == "check-fr") {
    const FrPrediction prediction = predict_fr(spec);
    body = nlohmann::json{{"command", "check-fr"},
                          {"n", spec.n},
                          {"alpha", spec.alpha},
                          {"beta", spec.beta},
                          {"ratio", ratio_json(spec)}};
    if (!prediction.note.empty()) {
      body["note"] = prediction.note;
    }
    if (prediction.admissible()) {
      const double seconds = prediction.certificate->tau.seconds(spec.alpha, spec.beta);
      body["certificate"] = *prediction.certificate;
      body["tau_seconds"] = seconds;
      body["tau_display"] = format_pi_time(seconds);
    } else {
      body["refusal"] = {{"code", prediction.refusal.code}, {"detail", prediction.refusal.detail}};
      exit_code = 2;
    }
  } else if (config.command == "cycle") {
    const FrPrediction prediction = predict_fr(spec);
    body = nlohmann::json{{"command", "cycle"},
                          {"n", spec.n},
                          {"alpha", spec.alpha},
                          {"beta", spec.beta},
                          {"ratio", ratio_json(spec)},
                          {"tol", config.tol}};
    if (!prediction.admissible()) {
      body["refusal"] = {{"code", prediction.refusal.code}, {"detail", prediction.refusal.detail}};
      exit_code = 2;
    } else {
      const CycleReport report = cycle_verify(spec, *prediction.certificate, config.tol);
      body["certificate"] = *prediction.certificate;
      body["report"] = report;
      if (!report.pass) {
        exit_code = 2;
      }
    }
  } else {
    throw UsageError("unknown command '" + config.command + "'");
  }

  if (payload.empty()) {
    payload = body.dump(2);
    payload += '\n';
  }
  write_payload(config, payload, out);
  return exit_code;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Spin-chain state-transfer and revival toolkit"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; explicit flags override its fields");

  FlagCapture flags;
  for (const std::string& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--N,-N", flags.n, "chain length N (N + 1 sites)");
    sub->add_option("--alpha", flags.alpha, "next-to-nearest strength, real or exact p/q");
    sub->add_option("--beta", flags.beta, "nearest-neighbour strength, real or exact p/q");
    sub->add_option("--output,-o", flags.output, "write to this path instead of stdout");
    sub->add_option("--format", flags.format, "csv or json");
    sub->add_option("--tol", flags.tol, "verification tolerance");
    if (name == "evolve") {
      sub->add_option("--t", flags.t, "time, real or multiple-of-pi syntax");
    }
    if (name == "scan") {
      sub->add_option("--t-max", flags.t_max, "scan end time, real or multiple-of-pi syntax");
      sub->add_option("--steps", flags.steps, "number of grid points");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig config;
  config.tol = default_tolerance();
  if (!config_path.empty()) {
    std::ifstream file(config_path);
    if (!file) {
      throw UsageError("cannot read config file '" + config_path + "'");
    }
    try {
      const nlohmann::json j = nlohmann::json::parse(file);
      j.get_to(config);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("malformed config file '" + config_path + "': " + e.what());
    }
  }

  for (const CLI::App* sub : app.get_subcommands()) {
    config.command = sub->get_name();
  }
  if (config.command.empty()) {
    throw UsageError("no command given; expected one of couplings, spectrum, evolve, scan, "
                     "check-pst, check-fr, cycle");
  }
  if (std::find(kCommands.begin(), kCommands.end(), config.command) == kCommands.end()) {
    throw UsageError("unknown command '" + config.command + "'");
  }

  if (flags.n) config.n = *flags.n;
  if (flags.alpha) config.alpha = *flags.alpha;
  if (flags.beta) config.beta = *flags.beta;
  if (flags.t) config.t = *flags.t;
  if (flags.t_max) config.t_max = *flags.t_max;
  if (flags.steps) config.steps = *flags.steps;
  if (flags.output) config.output = *flags.output;
  if (flags.format) config.format = *flags.format;
  if (flags.tol) config.tol = *flags.tol;

  if (config.n < 1) {
    throw UsageError("N must be >= 1");
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  try {
    const RunConfig config = parse_args(args);
    return run(config, std::cout, std::cerr);
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pstchain
