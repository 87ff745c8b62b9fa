// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dirac/oracle.hpp"
#include "dirac/spectrum.hpp"
#include "dirac/states.hpp"

using namespace dirac;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    r.pass = false;
    r.detail += " [over time budget " + std::to_string(budget_s) + " s]";
  }
  std::printf("AC%-2d %s  %-34s %s (%.3f s)\n", id, r.pass ? "PASS" : "FAIL", title, r.detail.c_str(), secs);
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double pt_distance(std::complex<double> lam) {
  return std::min(std::abs(lam - std::complex<double>(0, 1)), std::abs(lam + std::complex<double>(0, 1)));
}

const std::vector<std::pair<double, double>> kStateCases = {{2.0, 2.0}, {3.0, 8.0}, {0.7, 5.0}, {4.2, 9.5}};

}  // namespace

int main() {
  criterion(1, "square-well spectrum (k=2, v0=2)", 1.0, [] {
    const auto roots = find_roots(square_well_secular(2.0, 2.0), kDefaultScanPoints, kDefaultRootTol);
    const double expected[] = {0.354274, 1.13356, 1.92583};
    if (roots.size() != 3) return Outcome{false, std::to_string(roots.size()) + " roots"};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(roots[i] - expected[i]));
    return Outcome{worst < 1e-4, "max |eps - reported| " + fmt("%.2e", worst)};
  });

  criterion(2, "state count (k=3, v0=8)", 1.0, [] {
    const int n = count_bound_states(3.0, 8.0);
    return Outcome{n == 5, std::to_string(n) + " bound states"};
  });

  criterion(3, "collapse count", 30.0, [] {
    const int deep = count_collapses(sweep_v0(3.0, {0.0, 8.0, 0.01}), 8.0);
    const int shallow = count_collapses(sweep_v0(2.0, {0.0, 2.0, 0.01}), 2.0 + 1e-9);
    return Outcome{deep == 2 && shallow == 0,
                   "k=3: " + std::to_string(deep) + " before v0=8, k=2: " + std::to_string(shallow) + " before v0=2"};
  });

  criterion(4, "cross-sweep consistency", 0.0, [] {
    const auto by_v0 = cut(sweep_v0(3.0, {0.0, 10.0, 0.01}), 8.0);
    const auto by_k = cut(sweep_k(8.0, {0.0, 6.0, 0.01}), 3.0);
    if (by_v0.size() != by_k.size() || by_k.size() != 5) {
      return Outcome{false, std::to_string(by_v0.size()) + " vs " + std::to_string(by_k.size()) + " values"};
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < by_k.size(); ++i) worst = std::max(worst, std::abs(by_v0[i] - by_k[i]));
    return Outcome{worst < 1e-6, "5 values, max gap " + fmt("%.2e", worst)};
  });

  criterion(5, "oracle equivalence (20 random)", 60.0, [] {
    std::mt19937 rng(20261016);
    std::uniform_real_distribution<double> uk(0.5, 5.0), uv(0.5, 10.0);
    double worst = 0.0;
    int total = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const double k = uk(rng), v0 = uv(rng);
      const auto pot = Potential1D::square_well(v0);
      FieldConfig field;
      field.electric = pot;
      const auto a = find_roots(square_well_secular(k, v0), kDefaultScanPoints, 1e-12);
      const auto b = find_roots(general_secular(k, pot), kDefaultScanPoints, 1e-12);
      const auto c = find_roots(shooting_secular(field, k), 400, 1e-12);
      if (a.size() != b.size() || a.size() != c.size()) {
        return Outcome{false, "root counts differ at k=" + fmt("%.4f", k) + " v0=" + fmt("%.4f", v0) + ": " +
                                  std::to_string(a.size()) + "/" + std::to_string(b.size()) + "/" +
                                  std::to_string(c.size())};
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max({worst, std::abs(a[i] - b[i]), std::abs(a[i] - c[i])});
      }
      total += static_cast<int>(a.size());
    }
    return Outcome{worst < 1e-5, std::to_string(total) + " roots, max spread " + fmt("%.2e", worst)};
  });

  std::vector<std::vector<PiecewiseState>> families;
  for (const auto& [k, v0] : kStateCases) families.push_back(square_well_bound_states(k, v0));

  criterion(6, "PT eigenvalues", 0.0, [&] {
    double worst = 0.0;
    int n = 0;
    for (const auto& fam : families) {
      for (const auto& s : fam) {
        worst = std::max(worst, pt_distance(pt_eigenvalue(s)));
        ++n;
      }
    }
    return Outcome{worst < 1e-8, std::to_string(n) + " states, max |lambda -+ i| " + fmt("%.2e", worst)};
  });

  criterion(7, "orthonormality", 0.0, [&] {
    double worst = 0.0;
    for (const auto& fam : families) {
      for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = 0; j < fam.size(); ++j) {
          worst = std::max(worst, std::abs(inner_product(fam[i], fam[j]) - (i == j ? 1.0 : 0.0)));
        }
      }
    }
    return Outcome{worst < 1e-8, "max |G - I| " + fmt("%.2e", worst)};
  });

  criterion(8, "equation residuals", 0.0, [&] {
    double second = 0.0, first = 0.0;
    for (const auto& fam : families) {
      for (const auto& s : fam) {
        const auto r = residuals(s);
        second = std::max(second, r.second_order);
        first = std::max(first, r.first_order);
      }
    }
    return Outcome{second < 1e-6 && first < 1e-6,
                   "second order " + fmt("%.2e", second) + ", first order " + fmt("%.2e", first)};
  });

  criterion(9, "Landau levels vs grid oracle", 0.0, [] {
    const double beta = 1.0, k = 0.5;
    const GridSpec grid{-14.0, 14.0, 20001};
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    const auto mag = landau_oracle_magnetic(beta, k, 6, grid);
    for (int n = 0; n <= 5; ++n) worst = std::max(worst, rel(mag[n], landau_levels_magnetic(beta, n).plus));
    for (double alpha : {0.0, 0.3, 0.6, 0.9}) {
      const auto levels = landau_oracle_proportional(alpha, beta, k, 6, grid);
      for (int n = 0; n <= 5; ++n) {
        const auto exact = landau_levels_proportional(alpha, beta, k, n);
        worst = std::max({worst, rel(levels[n].plus, exact.plus), rel(levels[n].minus, exact.minus)});
      }
    }
    return Outcome{worst < 1e-5, "n <= 5, alpha in {0, 0.3, 0.6, 0.9}, max relative " + fmt("%.2e", worst)};
  });

  criterion(10, "density contracts", 0.0, [&] {
    double norm_gap = 0.0;
    bool pointwise = true;
    for (const auto& fam : families) {
      for (const auto& s : fam) {
        norm_gap = std::max(norm_gap, std::abs(total_probability(s) - 1.0));
        const auto d = probability_density(s);
        for (std::size_t i = 0; i < d.rho.size(); ++i) {
          pointwise = pointwise && d.rho[i] >= 0.0 && d.jx[i] == 0.0 && std::abs(d.jy[i]) <= d.rho[i] * (1 + 1e-14);
        }
      }
    }
    return Outcome{pointwise && norm_gap < 1e-8,
                   std::string(pointwise ? "pointwise ok" : "pointwise violated") + ", max |int rho - 1| " +
                       fmt("%.2e", norm_gap)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
