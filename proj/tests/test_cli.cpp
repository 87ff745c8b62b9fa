#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dirac/errors.hpp"
#include "dirac/io.hpp"

using namespace dirac;
using cli::Command;
using cli::RunConfig;

namespace {

struct Output {
  int status;
  std::string out;
  std::string err;
};

Output run(const RunConfig& c) {
  std::ostringstream out, err;
  const int status = cli::run(c, out, err);
  return {status, out.str(), err.str()};
}

RunConfig make(Command cmd, std::optional<std::string> k, std::optional<std::string> v0) {
  RunConfig c;
  c.command = cmd;
  c.k = std::move(k);
  c.v0 = std::move(v0);
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("diracwell_test_" + name)).string();
}

}  // namespace

TEST_CASE("range syntax") {
  const auto r = cli::parse_range("0:10:0.01");
  CHECK(r.lo == 0.0);
  CHECK(r.hi == 10.0);
  CHECK(r.step == 0.01);
  for (const char* bad : {"0:10", "a:1:0.1", "0:1:0", "1:0:0.1", "0:1:0.1:3"}) {
    CHECK_THROWS_AS(cli::parse_range(bad), Error);
  }
}

TEST_CASE("spectrum command") {
  const auto r = run(make(Command::Spectrum, "2", "2"));
  CHECK(r.status == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "level,epsilon");
  CHECK(l[1] == "0,0.354273617982");
  CHECK(l[2] == "1,1.13356051191");
  CHECK(l[3] == "2,1.92583007311");

  auto json = make(Command::Spectrum, "3", "8");
  json.format = cli::Format::Json;
  const auto j = nlohmann::json::parse(run(json).out);
  CHECK(j["levels"].size() == 5);
  CHECK(j["L"] == 1.0);

  auto general = make(Command::Spectrum, "1.5", std::nullopt);
  general.potential = Potential1D::piecewise({-1.5, 0.0, 0.8}, {0.0, -3.0, -1.2, 0.5});
  CHECK(lines(run(general).out).size() == 4);
}

TEST_CASE("sweep commands") {
  const auto r = run(make(Command::SweepV0, "3", "0:10:0.01"));
  CHECK(r.status == 0);
  const auto l = lines(r.out);
  CHECK(l[0] == "param,branch,epsilon");
  const auto blank = std::find(l.begin(), l.end(), "");
  REQUIRE(blank != l.end());
  CHECK(*(blank + 1) == "param,branch,epsilon,termination");
  int before8 = 0;
  for (auto it = blank + 2; it != l.end(); ++it) {
    if (std::stod(*it) < 8.0 && it->find("lower_edge") != std::string::npos) ++before8;
  }
  CHECK(before8 == 2);

  auto to_file = make(Command::SweepK, "0:6:0.05", "8");
  to_file.output = temp_path("sweep.csv");
  CHECK(run(to_file).status == 0);
  std::ifstream branches(*to_file.output);
  std::string header;
  std::getline(branches, header);
  CHECK(header == "param,branch,epsilon");
  std::ifstream term(temp_path("sweep.terminations.csv"));
  REQUIRE(term.good());
  std::getline(term, header);
  CHECK(header == "param,branch,epsilon,termination");
  std::remove(to_file.output->c_str());
  std::remove(temp_path("sweep.terminations.csv").c_str());

  auto json = make(Command::SweepV0, "3", "0:8:0.05");
  json.format = cli::Format::Json;
  const auto j = nlohmann::json::parse(run(json).out);
  CHECK(j["parameter"] == "v0");
  CHECK(j["terminations"].size() == 2);
  CHECK(j["terminations"][0]["termination"] == "lower_edge");
}

TEST_CASE("state command") {
  auto c = make(Command::State, "2", "2");
  c.level = 0;
  const auto r = run(c);
  CHECK(r.status == 0);
  const auto l = lines(r.out);
  CHECK(l[0] == "x,re_psi1,im_psi1,re_psi2,im_psi2,rho,jy");
  CHECK(l.size() == 4002);
  // trapezoid of rho
  double integral = 0.0, prev_x = 0.0, prev_rho = 0.0;
  for (std::size_t i = 1; i < l.size(); ++i) {
    double v[7];
    std::sscanf(l[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6]);
    if (i > 1) integral += 0.5 * (v[5] + prev_rho) * (v[0] - prev_x);
    prev_x = v[0];
    prev_rho = v[5];
  }
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));

  c.format = cli::Format::Json;
  const auto j = nlohmann::json::parse(run(c).out);
  for (const char* key : {"k", "epsilon", "v0", "L", "norm", "pt_eigenvalue", "x", "rho", "jy"}) CHECK(j.contains(key));
  CHECK(std::abs(std::abs(j["pt_eigenvalue"][1].get<double>()) - 1.0) < 1e-8);

  c.level = 3;
  c.format = cli::Format::Csv;
  const auto bad = run(c);
  CHECK(bad.status == 2);
  CHECK(bad.err.find("level 3") != std::string::npos);
}

TEST_CASE("landau command") {
  RunConfig c;
  c.command = Command::Landau;
  c.beta = 1.0;
  c.max_level = 2;
  const auto l = lines(run(c).out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "n,epsilon_plus,epsilon_minus");
  CHECK(l[1] == "0,0,0");
  CHECK(l[2] == "1,1.41421356237,-1.41421356237");
  c.alpha = 1.0;
  CHECK(run(c).status == 2);
}

TEST_CASE("verify command") {
  RunConfig c;
  c.command = Command::Verify;
  const auto r = run(c);
  CHECK(r.status == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(lines(r.out).size() == 7);

  // A flat profile has nothing to verify and must not report success.
  c.potential = Potential1D::piecewise({0.0}, {0.0, 0.0});
  const auto flat = run(c);
  CHECK(flat.status == 1);
  CHECK(flat.out.find("FAIL bound states") != std::string::npos);

  // A barrier binds hole states below V - k; those pass every check.
  c.potential = Potential1D::piecewise({-1.0, 1.0}, {0.0, 0.5, 0.0});
  CHECK(run(c).status == 0);
}

TEST_CASE("configuration errors") {
  CHECK(run(make(Command::Spectrum, "2", std::nullopt)).status == 2);
  CHECK(run(make(Command::Spectrum, "x", "2")).status == 2);
  CHECK(run(make(Command::SweepV0, "3", "8")).status == 2);
  CHECK(run(make(Command::SweepK, "3", "0:1:0.1")).status == 2);
  auto c = make(Command::Spectrum, "2", "2");
  c.half_width = -1.0;
  CHECK(run(c).status == 2);
  CHECK_THROWS_AS(cli::parse_command("plot"), Error);
  CHECK_THROWS_AS(cli::config_from_json(nlohmann::json::array()), Error);
  CHECK_THROWS_AS(cli::config_from_json({{"command", "spectrum"}, {"k", true}}), Error);
  CHECK_THROWS_AS(cli::config_from_json({{"command", "spectrum"}, {"format", "xml"}}), Error);
}

TEST_CASE("json config") {
  const auto c = cli::config_from_json(
      {{"command", "sweep-v0"}, {"k", 3}, {"v0", "0:8:0.1"}, {"L", 1.0}, {"format", "json"}});
  CHECK(c.command == Command::SweepV0);
  CHECK(*c.k == "3");
  CHECK(*c.v0 == "0:8:0.1");
  CHECK(c.format == cli::Format::Json);
  CHECK(run(c).status == 0);
}

TEST_CASE("outputs are deterministic") {
  auto c = make(Command::SweepV0, "3", "0:9:0.05");
  const auto a = run(c).out;
  c.workers = 3;
  CHECK(run(c).out == a);
  auto s = make(Command::State, "3", "8");
  s.level = 2;
  CHECK(run(s).out == run(s).out);
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
}
