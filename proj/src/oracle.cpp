#include "dirac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <lapacke.h>

#include "dirac/errors.hpp"

namespace dirac {

// ---------------------------------------------------------------------------
// Finite differences

void GridSpec::validate() const {
  if (points < 3) throw Error(ErrorKind::InvalidArgument, "grid needs at least 3 points");
  if (!(x_min < x_max)) throw Error(ErrorKind::InvalidArgument, "grid needs x_min < x_max");
}

namespace {

std::vector<double> tridiagonal_lowest(const std::function<double(double)>& potential, const GridSpec& spec,
                                       int count) {
  const lapack_int n = spec.points - 2;
  if (count < 1 || count > n) throw Error(ErrorKind::InvalidArgument, "eigenvalue count out of range");
  const double h = spec.spacing();
  const double off = -1.0 / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> sub(static_cast<std::size_t>(n - 1), off);
  for (lapack_int i = 0; i < n; ++i) {
    diag[static_cast<std::size_t>(i)] = 2.0 / (h * h) + potential(spec.x_min + (i + 1) * h);
  }

  lapack_int found = 0;
  lapack_int nsplit = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> iblock(static_cast<std::size_t>(n));
  std::vector<lapack_int> isplit(static_cast<std::size_t>(n));
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, 1, count, abstol, diag.data(), sub.data(),
                                         &found, &nsplit, w.data(), iblock.data(), isplit.data());
  if (info != 0 || found != count) {
    throw Error(ErrorKind::InvalidArgument, "tridiagonal eigensolver failed (info=" + std::to_string(info) + ")");
  }
  w.resize(static_cast<std::size_t>(count));
  return w;
}

}  // namespace

std::vector<double> grid_eigenvalues(const std::function<double(double)>& potential, const GridSpec& spec,
                                     int count, double convergence_tol) {
  spec.validate();
  auto values = tridiagonal_lowest(potential, spec, count);
  if (convergence_tol > 0.0) {
    GridSpec finer = spec;
    finer.points = 2 * spec.points - 1;
    const auto refined = tridiagonal_lowest(potential, finer, count);
    for (int i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (std::abs(refined[idx] - values[idx]) > convergence_tol) {
        throw Error(ErrorKind::GridTooCoarse, "eigenvalue " + std::to_string(i) + " moved by " +
                                                  std::to_string(std::abs(refined[idx] - values[idx])) +
                                                  " under grid refinement");
      }
    }
  }
  return values;
}

std::vector<double> landau_oracle_magnetic(double beta, double k, int count, const GridSpec& spec) {
  const auto A = Potential1D::linear(beta);
  auto partner = [&](double x) {
    const double w = magnetic_superpotential({k, 0.0}, A, x);
    return w * w - beta;  // W^2 - W'
  };
  auto lambdas = grid_eigenvalues(partner, spec, count);
  for (double& l : lambdas) l = std::sqrt(std::max(l, 0.0));
  return lambdas;
}

std::vector<LevelPair> landau_oracle_proportional(double alpha, double beta, double k, int count,
                                                  const GridSpec& spec) {
  const auto A = Potential1D::linear(beta);
  const double c2 = 1.0 - alpha * alpha;

  // mu-level `n` of the lower partner for the superpotential at energy eps.
  auto mu_level = [&](double eps, int n) {
    auto partner = [&](double x) {
      const auto sp = superpotential_proportional(alpha, {k, eps}, A, x);
      return sp.W * sp.W - std::sqrt(c2) * beta;  // W' = sqrt(1 - alpha^2) beta
    };
    return grid_eigenvalues(partner, spec, n + 1).back();
  };

  std::vector<LevelPair> out;
  for (int n = 0; n < count; ++n) {
    LevelPair pair;
    for (int sign : {+1, -1}) {
      double eps = -alpha * k;
      for (int it = 0; it < 3; ++it) {
        const double mu = std::max(mu_level(eps, n), 0.0);
        eps = -alpha * k + sign * std::sqrt(c2 * mu);
      }
      (sign > 0 ? pair.plus : pair.minus) = eps;
    }
    out.push_back(pair);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shooting

namespace {

constexpr double kDecayBudget = 40.0;  // e^{-40} suppression beyond the window
constexpr double kMarch = 0.05;

double decay_squared_at(const FieldConfig& config, const QuantumLabel& label, double x) {
  const double w = label.k + config.magnetic_at(x);
  const double d = label.epsilon - config.electric_at(x);
  return w * w - d * d;
}

bool all_piecewise(const FieldConfig& config) {
  const bool e = !config.electric || config.electric->as_piecewise();
  const bool m = !config.magnetic || config.magnetic->as_piecewise();
  return e && m;
}

std::vector<double> all_kinks(const FieldConfig& config) {
  std::set<double> kinks;
  for (const auto* pot : {config.electric ? &*config.electric : nullptr,
                          config.magnetic ? &*config.magnetic : nullptr}) {
    if (!pot) continue;
    for (double x : pot->kinks()) kinks.insert(x);
  }
  return {kinks.begin(), kinks.end()};
}

double safe_value(const Potential1D& pot, double x) {
  try {
    return pot.value(x);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularPoint) throw;
    return 0.0;
  }
}

// Half-extent beyond which the potential is flat to relative_cutoff.
std::pair<double, double> flat_window(const Potential1D& pot, const ShootingOptions& options) {
  const auto [lo, hi] = pot.support();
  const double center = 0.5 * (lo + hi);
  const auto asym = pot.asymptotes();
  if (!asym) return {center, center};
  double scale = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = lo + (hi - lo) * i / 100.0;
    const double v = safe_value(pot, x);
    scale = std::max({scale, std::abs(v - asym->first), std::abs(v - asym->second)});
  }
  if (scale == 0.0) return {center, center};
  const double limit = options.relative_cutoff * scale;
  double left = center;
  while (center - left < options.max_extent && std::abs(safe_value(pot, left) - asym->first) > limit) {
    left -= kMarch;
  }
  double right = center;
  while (right - center < options.max_extent && std::abs(safe_value(pot, right) - asym->second) > limit) {
    right += kMarch;
  }
  return {left, right};
}

Eigen::Vector2d decaying_direction(const FieldConfig& config, const QuantumLabel& label, double x,
                                   bool from_left) {
  const double w = label.k + config.magnetic_at(x);
  const double d = label.epsilon - config.electric_at(x);
  const double k2 = w * w - d * d;
  if (!(k2 > 0.0)) {
    throw Error(ErrorKind::NonDecayingExterior,
                std::string(from_left ? "left" : "right") + " exterior has no decaying solution at x=" +
                    std::to_string(x));
  }
  const double kappa = std::sqrt(k2);
  // Eigenvectors of [[w, -d], [d, -w]]; the branch is picked so no component vanishes with w.
  if (from_left) {  // eigenvalue +kappa, grows to the right
    return w > 0.0 ? Eigen::Vector2d(w + kappa, d) : Eigen::Vector2d(d, w - kappa);
  }
  return w > 0.0 ? Eigen::Vector2d(d, w + kappa) : Eigen::Vector2d(w - kappa, d);  // eigenvalue -kappa
}

// RK4 from `from` to `to` without stepping across a kink; the field inside a
// segment is sampled strictly between its ends so one-sided limits are used.
Eigen::Vector2d integrate(const FieldConfig& config, const QuantumLabel& label, Eigen::Vector2d psi, double from,
                          double to, const std::vector<double>& kinks, double step) {
  std::vector<double> nodes{from};
  for (double k : kinks) {
    if ((k - from) * (k - to) < 0.0) nodes.push_back(k);
  }
  nodes.push_back(to);
  std::sort(nodes.begin(), nodes.end(), [&](double a, double b) { return to > from ? a < b : a > b; });

  for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
    const double a = nodes[s];
    const double b = nodes[s + 1];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double guard = 1e-9 * len;
    auto M = [&](double x) { return build_M(config, label, std::clamp(x, lo + guard, hi - guard)); };

    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      const double x = a + i * h;
      const Eigen::Vector2d k1 = M(x) * psi;
      const Eigen::Vector2d k2 = M(x + 0.5 * h) * (psi + 0.5 * h * k1);
      const Eigen::Vector2d k3 = M(x + 0.5 * h) * (psi + 0.5 * h * k2);
      const Eigen::Vector2d k4 = M(x + h) * (psi + h * k3);
      psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double norm = psi.norm();
      if (norm > 1e100 || norm < 1e-100) psi /= norm;
    }
  }
  return psi.normalized();
}

}  // namespace

ShootingWindow shooting_window(const FieldConfig& config, const QuantumLabel& label,
                               const ShootingOptions& options) {
  config.validate();
  ShootingWindow win;
  const auto kinks = all_kinks(config);

  if (all_piecewise(config)) {
    // Exterior regions are exact exponentials; starting on the outer breakpoints is exact.
    win.x_left = kinks.empty() ? -1.0 : kinks.front();
    win.x_right = kinks.empty() ? 1.0 : kinks.back();
    if (win.x_right - win.x_left < 1e-12) {
      win.x_left -= 0.5;
      win.x_right += 0.5;
    }
  } else {
    double left = 0.0;
    double right = 0.0;
    bool first = true;
    for (const auto* pot : {config.electric ? &*config.electric : nullptr,
                            config.magnetic ? &*config.magnetic : nullptr}) {
      if (!pot) continue;
      const auto [l, r] = flat_window(*pot, options);
      left = first ? l : std::min(left, l);
      right = first ? r : std::max(right, r);
      first = false;
    }
    const double center = 0.5 * (left + right);
    const double cap_lo = center - options.max_extent;
    const double cap_hi = center + options.max_extent;

    // March out from the outermost classically allowed points until the
    // decaying solution has dropped by e^{-kDecayBudget}.
    double allowed_lo = center;
    double allowed_hi = center;
    for (double x = cap_lo; x <= cap_hi; x += kMarch) {
      if (decay_squared_at(config, label, x) <= 0.0) {
        allowed_lo = std::min(allowed_lo, x);
        allowed_hi = std::max(allowed_hi, x);
      }
    }
    double budget = 0.0;
    double x = allowed_lo;
    while (x > cap_lo && budget < kDecayBudget) {
      budget += std::sqrt(std::max(decay_squared_at(config, label, x), 0.0)) * kMarch;
      x -= kMarch;
    }
    left = std::max(cap_lo, std::min(left, x));
    budget = 0.0;
    x = allowed_hi;
    while (x < cap_hi && budget < kDecayBudget) {
      budget += std::sqrt(std::max(decay_squared_at(config, label, x), 0.0)) * kMarch;
      x += kMarch;
    }
    right = std::min(cap_hi, std::max(right, x));
    win.x_left = left;
    win.x_right = right;
  }
  if (options.x_left) win.x_left = *options.x_left;
  if (options.x_right) win.x_right = *options.x_right;
  win.x_match = options.x_match.value_or(0.5 * (win.x_left + win.x_right));
  if (!(win.x_left < win.x_right) || win.x_match < win.x_left || win.x_match > win.x_right) {
    throw Error(ErrorKind::InvalidArgument, "shooting window must satisfy x_left <= x_match <= x_right");
  }
  return win;
}

double dirac_shooting(const FieldConfig& config, const QuantumLabel& label, const ShootingOptions& options) {
  if (!(options.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "shooting step must be positive");
  const auto win = shooting_window(config, label, options);
  const auto kinks = all_kinks(config);

  // Start points sit on the window ends; a kink there is sampled from the exterior side.
  const double nudge = 1e-12 * std::max(1.0, win.x_right - win.x_left);
  const auto from_left = decaying_direction(config, label, win.x_left - nudge, true);
  const auto from_right = decaying_direction(config, label, win.x_right + nudge, false);

  const auto psi_l = integrate(config, label, from_left.normalized(), win.x_left, win.x_match, kinks, options.step);
  const auto psi_r =
      integrate(config, label, from_right.normalized(), win.x_right, win.x_match, kinks, options.step);
  return psi_l(0) * psi_r(1) - psi_l(1) * psi_r(0);
}

AdmissibleBand shooting_band(const FieldConfig& config, double k) {
  const auto limits = [](const std::optional<Potential1D>& pot) -> std::optional<std::pair<double, double>> {
    if (!pot) return std::pair{0.0, 0.0};
    return pot->asymptotes();
  };
  const auto v = limits(config.electric);
  const auto a = limits(config.magnetic);
  if (!v || !a) {
    throw Error(ErrorKind::NonDecayingExterior, "fields without finite limits need an explicit band");
  }
  const double wl = std::abs(k + a->first);
  const double wr = std::abs(k + a->second);
  return {std::max(v->first - wl, v->second - wr), std::min(v->first + wl, v->second + wr)};
}

SecularFunction shooting_secular(const FieldConfig& config, double k, const ShootingOptions& options,
                                 std::optional<AdmissibleBand> band) {
  SecularFunction f;
  f.band = band.value_or(shooting_band(config, k));
  f.degenerate_points = {f.band.lo, f.band.hi};
  f.eval = [config, k, options](double eps) {
    try {
      return dirac_shooting(config, {k, eps}, options);
    } catch (const Error& e) {
      // A truncated slowly-decaying tail can close the band slightly early.
      if (e.kind() != ErrorKind::NonDecayingExterior) throw;
      throw Error(ErrorKind::OutsideAdmissibleBand, e.what());
    }
  };
  return f;
}

}  // namespace dirac
