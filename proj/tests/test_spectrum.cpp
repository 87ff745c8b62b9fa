#include <doctest.h>

#include <cmath>

#include "dirac/errors.hpp"
#include "dirac/oracle.hpp"
#include "dirac/spectrum.hpp"

using namespace dirac;

TEST_CASE("admissible interval") {
  const auto b = admissible_interval(3.0, 8.0);
  CHECK(b.lo == -3.0);
  CHECK(b.hi == 3.0);
  const auto c = admissible_interval(2.0, 2.0);
  CHECK(c.lo == 0.0);
  CHECK(c.hi == 2.0);
  CHECK(admissible_interval(2.0, 0.0).empty());
  CHECK(admissible_interval(0.0, 3.0).empty());
  const auto m = admissible_interval(-2.0, 2.0);
  CHECK(m.lo == c.lo);
  CHECK(m.hi == c.hi);
}

TEST_CASE("square-well roots") {
  const auto roots = find_roots(square_well_secular(2.0, 2.0), 2000, 1e-10);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(0.354274).epsilon(1e-5));
  CHECK(roots[1] == doctest::Approx(1.13356).epsilon(1e-5));
  CHECK(roots[2] == doctest::Approx(1.92583).epsilon(1e-5));

  const auto deep = find_roots(square_well_secular(3.0, 8.0), kDefaultScanPoints, 1e-13);
  const double ref[] = {-2.5426728381213, -1.36067628201037, -0.123466987136258, 1.12126744088862,
                        2.31986635063101};
  REQUIRE(deep.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(deep[i] == doctest::Approx(ref[i]).epsilon(1e-11));

  CHECK(find_roots(square_well_secular(2.0, 0.0)).empty());
  CHECK(count_bound_states(3.0, 8.0) == 5);
  CHECK(count_bound_states(2.0, 2.0) == 3);
  CHECK(count_bound_states(2.0, 0.0) == 0);
}

TEST_CASE("roots stay strictly inside the band") {
  for (double v0 : {0.5, 2.0, 4.0, 6.3864, 9.0}) {
    const auto f = square_well_secular(3.0, v0);
    for (double r : find_roots(f)) {
      CHECK(f.band.contains(r));
      CHECK(r - f.band.lo > kBoundaryExclusion);
      CHECK(f.band.hi - r > kBoundaryExclusion);
    }
  }
}

TEST_CASE("parameter ranges") {
  const auto v = ParamRange{0.0, 1.0, 0.25}.values();
  REQUIRE(v.size() == 5);
  CHECK(v.back() == 1.0);
  CHECK(ParamRange{0.0, 10.0, 0.01}.values().size() == 1001);
  CHECK(ParamRange{0.0, 10.0, 0.01}.values().back() == 10.0);
}

TEST_CASE("k sweep cuts") {
  const auto deep = sweep_k(8.0, {0.0, 6.0, 0.01});
  CHECK(cut(deep, 3.0).size() == 5);
  const auto shallow = sweep_k(2.0, {0.0, 4.0, 0.01});
  const auto c = cut(shallow, 2.0);
  const auto direct = find_roots(square_well_secular(2.0, 2.0));
  REQUIRE(c.size() == direct.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(direct[i]).epsilon(1e-9));
  for (const auto& b : shallow) {
    CHECK(b.parameter == "k");
    for (std::size_t i = 1; i < b.samples.size(); ++i) CHECK(b.samples[i].first > b.samples[i - 1].first);
  }
}

TEST_CASE("negative k mirrors positive k") {
  const auto pos = sweep_k(2.0, {0.5, 3.0, 0.05});
  const auto neg = sweep_k(2.0, {-3.0, -0.5, 0.05});
  for (double k : {0.5, 1.25, 2.0, 3.0}) {
    const auto a = cut(pos, k);
    const auto b = cut(neg, -k);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("depth sweep collapses") {
  const auto branches = sweep_v0(3.0, {0.0, 10.0, 0.01});
  CHECK(count_collapses(branches, 8.0) == 2);
  // Collapse depths: 3 + sqrt(9 + (n pi / 2)^2).
  const double expected[] = {6.38635513498988, 7.34391579120606, 8.58628766735576};
  std::vector<double> seen;
  for (const auto& b : branches) {
    if (b.termination && b.termination->edge == BandEdge::Lower) seen.push_back(b.termination->param);
  }
  std::sort(seen.begin(), seen.end());
  REQUIRE(seen.size() >= 3);
  for (int i = 0; i < 3; ++i) CHECK(seen[i] == doctest::Approx(expected[i]).epsilon(1e-7));

  const auto at8 = cut(branches, 8.0);
  const auto direct = find_roots(square_well_secular(3.0, 8.0));
  REQUIRE(at8.size() == direct.size());
  for (std::size_t i = 0; i < at8.size(); ++i) CHECK(at8[i] == doctest::Approx(direct[i]).epsilon(1e-9));

  CHECK(count_collapses(sweep_v0(2.0, {0.0, 2.0, 0.01}), 2.0 + 1e-9) == 0);
}

TEST_CASE("root count grows with depth between collapses") {
  const auto branches = sweep_v0(3.0, {0.0, 6.3, 0.05});
  int last = 0;
  for (double v0 : ParamRange{0.0, 6.3, 0.05}.values()) {
    const int n = static_cast<int>(cut(branches, v0).size());
    CHECK(n >= last);
    last = n;
  }
}

TEST_CASE("parallel sweeps are deterministic") {
  SweepOptions serial;
  SweepOptions parallel;
  parallel.workers = 4;
  const auto a = sweep_v0(3.0, {0.0, 9.0, 0.05}, serial);
  const auto b = sweep_v0(3.0, {0.0, 9.0, 0.05}, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].samples == b[i].samples);
    CHECK(a[i].termination.has_value() == b[i].termination.has_value());
  }
}

TEST_CASE("landau level formulas") {
  const auto g = landau_levels_magnetic(1.0, 0);
  CHECK(g.plus == 0.0);
  CHECK(g.minus == 0.0);
  CHECK(landau_levels_magnetic(1.0, 1).plus == doctest::Approx(std::sqrt(2.0)));
  CHECK(landau_levels_magnetic(2.0, 2).minus == doctest::Approx(-2.8284271247461903));

  for (int n = 0; n < 5; ++n) {
    const auto a = landau_levels_proportional(0.0, 1.3, 0.7, n);
    const auto b = landau_levels_magnetic(1.3, n);
    CHECK(a.plus == doctest::Approx(b.plus));
    CHECK(a.minus == doctest::Approx(b.minus));
  }
  const auto p = landau_levels_proportional(0.5, 1.0, 0.0, 1);
  CHECK(p.plus == doctest::Approx(std::pow(0.75, 0.75) * std::sqrt(2.0)).epsilon(1e-14));
  const auto z = landau_levels_proportional(0.4, 1.0, 2.0, 0);
  CHECK(z.plus == doctest::Approx(-0.8));
  CHECK(z.minus == doctest::Approx(-0.8));

  CHECK_THROWS_AS(landau_levels_magnetic(1.0, -1), Error);
  CHECK_THROWS_AS(landau_levels_proportional(1.0, 1.0, 0.0, 1), Error);
  try {
    landau_levels_proportional(1.2, 1.0, 0.0, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedRegime);
  }
  try {
    landau_levels_magnetic(1.0, -2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidLevel);
  }
}

TEST_CASE("landau formulas against the grid oracle") {
  const GridSpec grid{-12.0, 12.0, 20001};
  const auto mag = landau_oracle_magnetic(1.0, 0.0, 2, grid);
  CHECK(mag[1] == doctest::Approx(landau_levels_magnetic(1.0, 1).plus).epsilon(1e-6));
  const auto mag2 = landau_oracle_magnetic(2.0, 0.0, 3, grid);
  CHECK(mag2[2] == doctest::Approx(landau_levels_magnetic(2.0, 2).plus).epsilon(1e-6));
  const auto prop = landau_oracle_proportional(0.5, 1.0, 0.0, 2, grid);
  const auto exact = landau_levels_proportional(0.5, 1.0, 0.0, 1);
  CHECK(prop[1].plus == doctest::Approx(exact.plus).epsilon(1e-6));
  CHECK(prop[1].minus == doctest::Approx(exact.minus).epsilon(1e-6));
}
