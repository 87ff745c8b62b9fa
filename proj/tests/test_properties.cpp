#include <doctest.h>

#include <cmath>
#include <random>

#include "dirac/oracle.hpp"
#include "dirac/spectrum.hpp"
#include "dirac/states.hpp"

using namespace dirac;

TEST_CASE("square-well and transfer secular functions share their zeros") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> uk(0.5, 5.0), uv(0.5, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double k = uk(rng);
    const double v0 = uv(rng);
    const auto a = find_roots(square_well_secular(k, v0), 10000, 1e-13);
    const auto b = find_roots(general_secular(k, Potential1D::square_well(v0)), 10000, 1e-13);
    INFO("k=" << k << " v0=" << v0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
  }
}

TEST_CASE("random stepped wells agree with shooting") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> width(0.3, 1.2), depth(-4.0, 0.5), k(0.8, 2.5);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> bps{-1.0};
    for (int i = 0; i < 2; ++i) bps.push_back(bps.back() + width(rng));
    const std::vector<double> values{0.0, depth(rng), depth(rng), 0.0};
    const auto pot = Potential1D::piecewise(bps, values);
    const double kk = k(rng);
    FieldConfig field;
    field.electric = pot;
    const auto a = find_roots(general_secular(kk, pot), kDefaultScanPoints, 1e-13);
    const auto b = find_roots(shooting_secular(field, kk), 600, 1e-13);
    INFO("trial " << trial);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-6);
  }
}

TEST_CASE("every reported root gives a rank-deficient match system") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uk(0.5, 5.0), uv(0.5, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double k = uk(rng);
    const double v0 = uv(rng);
    for (double eps : find_roots(square_well_secular(k, v0), kDefaultScanPoints, 1e-13)) {
      CHECK_NOTHROW(assemble_square_well_state({k, eps}, v0));
    }
  }
}

TEST_CASE("bound-state contracts across random wells") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uk(0.5, 5.0), uv(0.5, 10.0), uL(0.5, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double k = uk(rng), v0 = uv(rng), L = uL(rng);
    const auto states = square_well_bound_states(k, v0, L);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& s = states[i];
      CHECK(std::abs(total_probability(s) - 1.0) < 1e-8);
      const auto lam = pt_eigenvalue(s);
      CHECK(std::abs(lam.real()) < 1e-8);
      CHECK(std::abs(std::abs(lam.imag()) - 1.0) < 1e-8);
      const auto r = residuals(s);
      CHECK(r.second_order < 1e-6);
      CHECK(r.first_order < 1e-6);
      for (std::size_t j = i + 1; j < states.size(); ++j) CHECK(std::abs(inner_product(s, states[j])) < 1e-8);
    }
  }
}
