#include "dirac/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

// f may refuse to evaluate exactly on a band edge; such samples are skipped.
std::optional<double> try_eval(const SecularFunction& f, double eps) {
  try {
    const double v = f(eps);
    if (std::isfinite(v)) return v;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OutsideAdmissibleBand) throw;
  }
  return std::nullopt;
}

double bisect(const SecularFunction& f, double lo, double hi, double flo, double tol) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool is_degenerate(const SecularFunction& f, double root, double exclusion) {
  if (root - f.band.lo <= exclusion || f.band.hi - root <= exclusion) return true;
  return std::any_of(f.degenerate_points.begin(), f.degenerate_points.end(),
                     [&](double d) { return std::abs(root - d) <= exclusion; });
}

// ---------------------------------------------------------------------------
// Sweeps

using ParamToWell = std::function<std::pair<double, double>(double)>;  // param -> (k, v0)

struct SweepProblem {
  std::string parameter;
  ParamToWell well;
  SweepOptions options;

  SecularFunction secular(double param) const {
    const auto [k, v0] = well(param);
    return square_well_secular(k, v0, options.half_width);
  }
};

std::vector<std::vector<double>> roots_on_lattice(const SweepProblem& problem,
                                                  const std::vector<double>& params) {
  std::vector<std::vector<double>> roots(params.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(problem.options.workers, static_cast<unsigned>(params.size())));
  auto job = [&](unsigned first) {
    for (std::size_t i = first; i < params.size(); i += workers) {
      roots[i] = find_roots(problem.secular(params[i]), problem.options.scan_points, problem.options.tol);
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
  }
  return roots;
}

struct Track {
  std::size_t branch = 0;
  double slope = 0.0;
};

// Unit slope is the natural scale: |d eps/dk| and |d eps/dv0| never exceed 1.
double jump_guard(double slope, double step) { return 10.0 * std::abs(step) * std::max(std::abs(slope), 1.0); }

// Root of the branch near eps_ref at `param`, restricted to a window that
// cannot reach the neighbouring branches.
std::optional<double> locate(const SweepProblem& problem, double param, double eps_ref, double half_window) {
  const auto f = problem.secular(param);
  if (f.band.empty()) return std::nullopt;
  const auto roots = find_roots_between(f, eps_ref - half_window, eps_ref + half_window, 64,
                                        problem.options.tol, 1e-14);
  if (roots.empty()) return std::nullopt;
  return *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
    return std::abs(a - eps_ref) < std::abs(b - eps_ref);
  });
}

Termination refine_termination(const SweepProblem& problem, double alive, double dead, double eps,
                               double slope, const std::vector<double>& neighbours) {
  double half_window = jump_guard(slope, dead - alive);
  for (double n : neighbours) {
    if (n != eps) half_window = std::min(half_window, 0.5 * std::abs(n - eps));
  }
  for (int it = 0; it < 80 && dead - alive > 1e-13 * std::max(1.0, std::abs(alive)); ++it) {
    const double mid = 0.5 * (alive + dead);
    if (const auto r = locate(problem, mid, eps, half_window)) {
      alive = mid;
      eps = *r;
    } else {
      dead = mid;
    }
  }

  const auto [k, v0] = problem.well(alive);
  const double a = std::abs(k);
  Termination t{alive, eps, BandEdge::Lower, std::abs(eps + a)};
  if (std::abs(eps - a) < t.distance) t = {alive, eps, BandEdge::Upper, std::abs(eps - a)};
  if (a - v0 > -a && std::abs(eps - (a - v0)) < t.distance) {
    t = {alive, eps, BandEdge::Inner, std::abs(eps - (a - v0))};
  }
  return t;
}

std::vector<SpectrumBranch> run_sweep(const SweepProblem& problem, const ParamRange& range) {
  const auto params = range.values();
  const auto roots = roots_on_lattice(problem, params);

  std::vector<SpectrumBranch> branches;
  std::vector<Track> active;
  auto open_branch = [&](double param, double eps) {
    SpectrumBranch b;
    b.parameter = problem.parameter;
    b.index = static_cast<int>(branches.size());
    b.samples.emplace_back(param, eps);
    branches.push_back(std::move(b));
    active.push_back({branches.size() - 1, 0.0});
  };

  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& now = roots[i];
    if (i == 0 || active.empty()) {
      for (double e : now) open_branch(params[i], e);
      continue;
    }
    const double step = params[i] - params[i - 1];

    struct Candidate {
      double distance;
      std::size_t track;
      std::size_t root;
    };
    std::vector<Candidate> candidates;
    for (std::size_t t = 0; t < active.size(); ++t) {
      const double last = branches[active[t].branch].samples.back().second;
      const double predicted = last + active[t].slope * step;
      const double guard = jump_guard(active[t].slope, step);
      for (std::size_t r = 0; r < now.size(); ++r) {
        const double d = std::abs(now[r] - predicted);
        if (d <= guard) candidates.push_back({d, t, r});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.distance < b.distance || (a.distance == b.distance && a.track < b.track);
    });
    std::vector<int> match(active.size(), -1);
    std::vector<bool> taken(now.size(), false);
    for (const auto& c : candidates) {
      if (match[c.track] >= 0 || taken[c.root]) continue;
      match[c.track] = static_cast<int>(c.root);
      taken[c.root] = true;
    }

    std::vector<Track> next;
    for (std::size_t t = 0; t < active.size(); ++t) {
      auto& branch = branches[active[t].branch];
      const double last = branch.samples.back().second;
      if (match[t] >= 0) {
        const double e = now[static_cast<std::size_t>(match[t])];
        next.push_back({active[t].branch, (e - last) / step});
        branch.samples.emplace_back(params[i], e);
      } else {
        branch.termination =
            refine_termination(problem, params[i - 1], params[i], last, active[t].slope, roots[i - 1]);
      }
    }
    active = std::move(next);
    for (std::size_t r = 0; r < now.size(); ++r) {
      if (!taken[r]) open_branch(params[i], now[r]);
    }
  }
  return branches;
}

}  // namespace

AdmissibleBand admissible_interval(double k, double v0) { return square_well_band(k, v0); }

std::vector<double> find_roots_between(const SecularFunction& f, double lo, double hi, int scan_points,
                                       double tol, double exclusion) {
  if (scan_points < 2) throw Error(ErrorKind::InvalidArgument, "scan_points must be at least 2");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "root tolerance must be positive");
  std::vector<double> out;
  if (f.band.empty()) return out;

  double a = std::max(lo, f.band.lo);
  double b = std::min(hi, f.band.hi);
  if (!(b > a)) return out;
  const double nudge = std::min(0.5 * exclusion, 0.25 * (b - a));
  if (a == f.band.lo) a += nudge;
  if (b == f.band.hi) b -= nudge;

  std::vector<double> xs(static_cast<std::size_t>(scan_points));
  std::vector<std::optional<double>> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    ys[i] = try_eval(f, xs[i]);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ys[i]) continue;
    if (*ys[i] == 0.0) {
      out.push_back(xs[i]);
      continue;
    }
    if (i + 1 < xs.size() && ys[i + 1] && *ys[i + 1] != 0.0 && (*ys[i] < 0.0) != (*ys[i + 1] < 0.0)) {
      out.push_back(bisect(f, xs[i], xs[i + 1], *ys[i], tol));
    }
  }
  std::erase_if(out, [&](double r) { return is_degenerate(f, r, exclusion); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> find_roots(const SecularFunction& f, int scan_points, double tol) {
  return find_roots_between(f, f.band.lo, f.band.hi, scan_points, tol, kBoundaryExclusion);
}

int count_bound_states(double k, double v0, double half_width) {
  return static_cast<int>(find_roots(square_well_secular(k, v0, half_width)).size());
}

std::vector<double> ParamRange::values() const {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "sweep step must be positive");
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "sweep range has hi < lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = lo + static_cast<double>(i) * step;
  if (std::abs(out.back() - hi) < 1e-9 * step) out.back() = hi;
  return out;
}

const char* to_string(BandEdge edge) noexcept {
  switch (edge) {
    case BandEdge::Lower: return "lower_edge";
    case BandEdge::Upper: return "upper_edge";
    case BandEdge::Inner: return "inner_edge";
  }
  return "unknown";
}

std::vector<SpectrumBranch> sweep_k(double v0, const ParamRange& k_range, const SweepOptions& options) {
  return run_sweep({"k", [v0](double k) { return std::pair{k, v0}; }, options}, k_range);
}

std::vector<SpectrumBranch> sweep_v0(double k, const ParamRange& v0_range, const SweepOptions& options) {
  return run_sweep({"v0", [k](double v0) { return std::pair{k, v0}; }, options}, v0_range);
}

std::vector<double> cut(const std::vector<SpectrumBranch>& branches, double param) {
  std::vector<double> out;
  for (const auto& b : branches) {
    for (const auto& [p, e] : b.samples) {
      if (std::abs(p - param) < 1e-9) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_collapses(const std::vector<SpectrumBranch>& branches, double before, double tol) {
  return static_cast<int>(std::count_if(branches.begin(), branches.end(), [&](const SpectrumBranch& b) {
    return b.termination && b.termination->edge == BandEdge::Lower && b.termination->distance < tol &&
           b.termination->param < before;
  }));
}

LevelPair landau_levels_magnetic(double beta, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidLevel, "Landau level index must be >= 0");
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  const double e = std::sqrt(2.0 * n * beta);
  return {e, -e};
}

LevelPair landau_levels_proportional(double alpha, double beta, double k, int n) {
  if (regime_for(alpha) != Regime::Trigonometric) {
    throw Error(ErrorKind::UnsupportedRegime, "proportional Landau levels need |alpha| < 1");
  }
  const auto base = landau_levels_magnetic(beta, n);
  const double scale = std::pow(1.0 - alpha * alpha, 0.75);
  return {-alpha * k + scale * base.plus, -alpha * k + scale * base.minus};
}

}  // namespace dirac
