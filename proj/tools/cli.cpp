#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/oracle.hpp"
#include "dirac/states.hpp"

namespace dirac::cli {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    config_error(std::string("--") + what + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    config_error(std::string("--") + what + ": expected a number, got '" + text + "'");
  }
  return value;
}

template <class T>
const T& require(const std::optional<T>& v, const char* what, Command cmd) {
  if (!v) config_error(std::string(to_string(cmd)) + " requires --" + what);
  return *v;
}

bool is_range(const std::string& text) { return text.find(':') != std::string::npos; }

double well_depth(const RunConfig& c) {
  if (c.v0) return parse_number(*c.v0, "v0");
  const auto* pc = c.potential ? c.potential->as_piecewise() : nullptr;
  if (!pc) return 0.0;
  return pc->values.front() - *std::min_element(pc->values.begin(), pc->values.end());
}

SecularFunction secular_for(const RunConfig& c, double k) {
  if (c.potential) return general_secular(k, *c.potential);
  return square_well_secular(k, parse_number(*c.v0, "v0"), c.half_width);
}

void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const double k = parse_number(*c.k, "k");
  const auto roots = find_roots(secular_for(c, k), kDefaultScanPoints, 1e-13);
  if (c.format == Format::Json) {
    emit_json(out, io::spectrum_json(k, well_depth(c), c.half_width, roots));
  } else {
    io::write_spectrum_csv(out, roots);
  }
  return 0;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  SweepOptions opts;
  opts.half_width = c.half_width;
  opts.workers = c.workers;
  std::vector<SpectrumBranch> branches;
  if (c.command == Command::SweepK) {
    branches = sweep_k(parse_number(*c.v0, "v0"), parse_range(*c.k), opts);
  } else {
    branches = sweep_v0(parse_number(*c.k, "k"), parse_range(*c.v0), opts);
  }
  if (c.format == Format::Json) {
    emit_json(out, io::sweep_json(branches));
    return 0;
  }
  io::write_sweep_csv(out, branches);
  if (c.output) {
    std::filesystem::path path(*c.output);
    path.replace_filename(path.stem().string() + ".terminations.csv");
    std::ofstream term(path);
    if (!term) config_error("cannot write " + path.string());
    io::write_terminations_csv(term, branches);
  } else {
    out << '\n';
    io::write_terminations_csv(out, branches);
  }
  return 0;
}

int cmd_state(const RunConfig& c, std::ostream& out) {
  const double k = parse_number(*c.k, "k");
  const auto states =
      c.potential ? bound_states(k, *c.potential) : square_well_bound_states(k, well_depth(c), c.half_width);
  const int level = c.level.value_or(0);
  if (level < 0 || level >= static_cast<int>(states.size())) {
    throw Error(ErrorKind::InvalidLevel, "level " + std::to_string(level) + " requested but only " +
                                             std::to_string(states.size()) + " bound states exist");
  }
  const auto& s = states[static_cast<std::size_t>(level)];
  if (c.format == Format::Json) {
    emit_json(out, io::state_json(s, {well_depth(c), c.half_width, pt_eigenvalue(s)}));
  } else {
    io::write_state_csv(out, s);
  }
  return 0;
}

int cmd_landau(const RunConfig& c, std::ostream& out) {
  const double beta = require(c.beta, "beta", c.command);
  const double alpha = c.alpha.value_or(0.0);
  const double k = c.k ? parse_number(*c.k, "k") : 0.0;
  std::vector<LevelPair> levels;
  for (int n = 0; n <= c.max_level; ++n) {
    levels.push_back(alpha == 0.0 ? landau_levels_magnetic(beta, n)
                                  : landau_levels_proportional(alpha, beta, k, n));
  }
  if (c.format == Format::Json) {
    emit_json(out, io::landau_json(levels));
  } else {
    io::write_landau_csv(out, levels);
  }
  return 0;
}

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void check(const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    bool ok = false;
    try {
      detail = body();
      ok = detail.rfind("FAIL", 0) != 0;
      if (!ok) detail = detail.substr(std::min<std::size_t>(detail.size(), 5));
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    failures_ += ok ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

std::string verdict(bool ok, const std::string& detail) { return ok ? detail : "FAIL " + detail; }

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const double k = c.k ? parse_number(*c.k, "k") : 2.0;
  const Potential1D pot = c.potential ? *c.potential : Potential1D::square_well(c.v0 ? parse_number(*c.v0, "v0") : 2.0,
                                                                                  c.half_width);
  Report report(out);

  std::vector<PiecewiseState> states;
  report.check("bound states", [&] {
    states = bound_states(k, pot);
    return verdict(!states.empty(), std::to_string(states.size()) + " found");
  });

  report.check("oracle agreement", [&] {
    const auto general = find_roots(general_secular(k, pot), kDefaultScanPoints, 1e-13);
    FieldConfig field;
    field.electric = pot;
    const auto shot = find_roots(shooting_secular(field, k, {}, outer_band(k, pot)), 400, 1e-12);
    double worst = 0.0;
    bool same = shot.size() == general.size();
    for (std::size_t i = 0; same && i < general.size(); ++i) worst = std::max(worst, std::abs(shot[i] - general[i]));
    return verdict(same && worst < 1e-5, same ? "max deviation " + sci(worst)
                                              : std::to_string(general.size()) + " vs " +
                                                    std::to_string(shot.size()) + " roots");
  });

  report.check("PT eigenvalues", [&] {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto lam = pt_eigenvalue(s);
      worst = std::max(worst, std::min(std::abs(lam - cdouble(0, 1)), std::abs(lam + cdouble(0, 1))));
    }
    return verdict(worst < 1e-8, "max |lambda -+ i| " + sci(worst));
  });

  report.check("orthonormality", [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = 0; j < states.size(); ++j) {
        worst = std::max(worst, std::abs(inner_product(states[i], states[j]) - (i == j ? 1.0 : 0.0)));
      }
    }
    return verdict(worst < 1e-8, "max |G - I| " + sci(worst));
  });

  report.check("residuals", [&] {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto r = residuals(s);
      worst = std::max({worst, r.second_order, r.first_order});
    }
    return verdict(worst < 1e-6, "max " + sci(worst));
  });

  report.check("density", [&] {
    double worst = 0.0;
    bool pointwise = true;
    for (const auto& s : states) {
      worst = std::max(worst, std::abs(total_probability(s) - 1.0));
      const auto d = probability_density(s);
      for (std::size_t i = 0; i < d.rho.size(); ++i) {
        pointwise = pointwise && d.rho[i] >= 0.0 && d.jx[i] == 0.0 && std::abs(d.jy[i]) <= d.rho[i] * (1 + 1e-12);
      }
    }
    return verdict(pointwise && worst < 1e-8, "max |int rho - 1| " + sci(worst));
  });

  const double beta = c.beta.value_or(1.0);
  const double alpha = c.alpha.value_or(0.0);
  report.check("landau levels", [&] {
    const double lk = 0.5;
    GridSpec grid{-14.0, 14.0, 20001};
    double worst = 0.0;
    if (alpha == 0.0) {
      const auto oracle = landau_oracle_magnetic(beta, lk, c.max_level + 1, grid);
      for (int n = 0; n <= c.max_level; ++n) {
        const double exact = landau_levels_magnetic(beta, n).plus;
        worst = std::max(worst, std::abs(oracle[n] - exact) / std::max(1.0, exact));
      }
    } else {
      const auto oracle = landau_oracle_proportional(alpha, beta, lk, c.max_level + 1, grid);
      for (int n = 0; n <= c.max_level; ++n) {
        const auto exact = landau_levels_proportional(alpha, beta, lk, n);
        worst = std::max({worst, std::abs(oracle[n].plus - exact.plus) / std::max(1.0, std::abs(exact.plus)),
                          std::abs(oracle[n].minus - exact.minus) / std::max(1.0, std::abs(exact.minus))});
      }
    }
    return verdict(worst < 1e-5, "max relative deviation " + sci(worst));
  });

  return report.failures() == 0 ? 0 : 1;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "sweep-k") return Command::SweepK;
  if (name == "sweep-v0") return Command::SweepV0;
  if (name == "state") return Command::State;
  if (name == "landau") return Command::Landau;
  if (name == "verify") return Command::Verify;
  config_error("unknown command '" + name + "'");
}

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::Spectrum: return "spectrum";
    case Command::SweepK: return "sweep-k";
    case Command::SweepV0: return "sweep-v0";
    case Command::State: return "state";
    case Command::Landau: return "landau";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

ParamRange parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    config_error("range must look like lo:hi:step, got '" + text + "'");
  }
  ParamRange r{parse_number(text.substr(0, a), "range"), parse_number(text.substr(a + 1, b - a - 1), "range"),
               parse_number(text.substr(b + 1), "range")};
  if (!(r.step > 0.0) || r.hi < r.lo) config_error("range needs lo <= hi and step > 0, got '" + text + "'");
  return r;
}

void RunConfig::validate() const {
  if (!(half_width > 0.0)) config_error("--L must be positive");
  if (max_level < 0) config_error("--n must be nonnegative");
  switch (command) {
    case Command::Spectrum:
    case Command::State:
      require(k, "k", command);
      if (!potential) require(v0, "v0", command);
      if (is_range(*k) || (v0 && is_range(*v0))) config_error(std::string(to_string(command)) + " takes single values");
      break;
    case Command::SweepK:
      if (!is_range(require(k, "k", command))) config_error("sweep-k needs --k lo:hi:step");
      if (is_range(require(v0, "v0", command))) config_error("sweep-k needs a single --v0");
      break;
    case Command::SweepV0:
      if (!is_range(require(v0, "v0", command))) config_error("sweep-v0 needs --v0 lo:hi:step");
      if (is_range(require(k, "k", command))) config_error("sweep-v0 needs a single --k");
      break;
    case Command::Landau:
      if (!(require(beta, "beta", command) > 0.0)) config_error("--beta must be positive");
      if (alpha && !(std::abs(*alpha) < 1.0)) config_error("--alpha must satisfy |alpha| < 1");
      break;
    case Command::Verify:
      if (alpha && !(std::abs(*alpha) < 1.0)) config_error("--alpha must satisfy |alpha| < 1");
      break;
  }
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  RunConfig c;
  try {
    auto text = [&](const char* key) -> std::optional<std::string> {
      if (!j.contains(key)) return std::nullopt;
      const auto& v = j.at(key);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return io::format_number(v.get<double>());
      config_error(std::string("config field '") + key + "' must be a number or a string");
    };
    c.command = parse_command(j.at("command").get<std::string>());
    if (j.contains("potential")) c.potential = j.at("potential").get<Potential1D>();
    c.k = text("k");
    c.v0 = text("v0");
    if (j.contains("L")) c.half_width = j.at("L").get<double>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("level")) c.level = j.at("level").get<int>();
    if (j.contains("n")) c.max_level = j.at("n").get<int>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f != "csv" && f != "json") config_error("format must be csv or json");
      c.format = f == "csv" ? Format::Csv : Format::Json;
    }
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    std::ofstream file;
    if (config.output) {
      file.open(*config.output);
      if (!file) config_error("cannot write " + *config.output);
    }
    std::ostream& sink = config.output ? static_cast<std::ostream&>(file) : out;
    switch (config.command) {
      case Command::Spectrum: return cmd_spectrum(config, sink);
      case Command::SweepK:
      case Command::SweepV0: return cmd_sweep(config, sink);
      case Command::State: return cmd_state(config, sink);
      case Command::Landau: return cmd_landau(config, sink);
      case Command::Verify: return cmd_verify(config, sink);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace dirac::cli
