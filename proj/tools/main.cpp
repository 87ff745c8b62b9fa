#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "dirac/errors.hpp"

namespace {

unsigned workers_from_env() {
  const char* env = std::getenv("DIRAC_WORKERS");
  if (!env) return 1;
  try {
    const int n = std::stoi(env);
    return n > 0 ? static_cast<unsigned>(n) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of massless Dirac fermions in one-dimensional electric and magnetic fields"};
  app.require_subcommand(1);

  std::string config_path, potential_json, format, output, k, v0;
  double half_width = 1.0, alpha = 0.0, beta = 0.0;
  int level = 0, max_level = 5;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its fields");
    sub->add_option("--k", k, "Momentum k (lo:hi:step for sweep-k)");
    sub->add_option("--v0", v0, "Well depth v0 (lo:hi:step for sweep-v0)");
    sub->add_option("--L", half_width, "Well half-width")->capture_default_str();
    sub->add_option("--potential", potential_json, "Potential as JSON, e.g. {\"family\":\"piecewise_constant\",...}");
    sub->add_option("--alpha", alpha, "Proportionality V = alpha A");
    sub->add_option("--beta", beta, "Magnetic slope, A = beta x");
    sub->add_option("--level", level, "State index, 0 = lowest energy");
    sub->add_option("--n", max_level, "Highest Landau level")->capture_default_str();
    sub->add_option("-o,--output", output, "Output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  for (const char* name : {"spectrum", "sweep-k", "sweep-v0", "state", "landau", "verify"}) {
    add_common(app.add_subcommand(name, std::string("Run ") + name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  dirac::cli::RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw dirac::Error(dirac::ErrorKind::ConfigError, "cannot read " + config_path);
      auto j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded()) throw dirac::Error(dirac::ErrorKind::ConfigError, "config is not valid JSON");
      j["command"] = sub->get_name();
      config = dirac::cli::config_from_json(j);
    } else {
      config.command = dirac::cli::parse_command(sub->get_name());
    }
    auto given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (given("--k")) config.k = k;
    if (given("--v0")) config.v0 = v0;
    if (given("--L")) config.half_width = half_width;
    if (given("--alpha")) config.alpha = alpha;
    if (given("--beta")) config.beta = beta;
    if (given("--level")) config.level = level;
    if (given("--n")) config.max_level = max_level;
    if (given("--output")) config.output = output;
    if (given("--format")) config.format = format == "json" ? dirac::cli::Format::Json : dirac::cli::Format::Csv;
    if (given("--potential")) {
      auto j = nlohmann::json::parse(potential_json, nullptr, false);
      if (j.is_discarded()) throw dirac::Error(dirac::ErrorKind::ConfigError, "--potential is not valid JSON");
      config.potential = j.get<dirac::Potential1D>();
    }
    config.workers = workers_from_env();
  } catch (const dirac::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return dirac::cli::run(config, std::cout, std::cerr);
}
