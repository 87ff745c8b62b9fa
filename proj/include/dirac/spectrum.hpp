#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirac/piecewise.hpp"

namespace dirac {

inline constexpr int kDefaultScanPoints = 2000;
inline constexpr double kDefaultRootTol = 1e-10;
/// Roots closer than this to a band edge or a q = 0 point are degenerate.
inline constexpr double kBoundaryExclusion = 1e-6;

/// Square-well band (max(-|k|, |k| - v0), |k|); empty for v0 <= 0 or k = 0.
AdmissibleBand admissible_interval(double k, double v0);

/// Brackets sign changes of `f` on a uniform scan of its band and bisects each
/// to an interval below `tol`. Degenerate roots are dropped. Sorted ascending.
std::vector<double> find_roots(const SecularFunction& f, int scan_points = kDefaultScanPoints,
                               double tol = kDefaultRootTol);

/// Same search restricted to [lo, hi] (clipped to the band).
std::vector<double> find_roots_between(const SecularFunction& f, double lo, double hi,
                                       int scan_points, double tol,
                                       double exclusion = kBoundaryExclusion);

/// Square-well bound-state count at default scan settings.
int count_bound_states(double k, double v0, double half_width = 1.0);

/// lo:hi:step, inclusive of hi when it falls on the lattice.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

enum class BandEdge { Lower, Upper, Inner };

const char* to_string(BandEdge edge) noexcept;

/// Where a branch leaves the band. Lower is eps = -|k| (a collapse into the
/// negative continuum), Upper is eps = |k|, Inner is eps = |k| - v0.
struct Termination {
  double param = 0.0;
  double epsilon = 0.0;
  BandEdge edge = BandEdge::Lower;
  double distance = 0.0;  // |epsilon - edge|
};

struct SpectrumBranch {
  std::string parameter;  // "k" or "v0"
  int index = 0;
  std::vector<std::pair<double, double>> samples;  // (param, eps), sorted by param
  std::optional<Termination> termination;
};

struct SweepOptions {
  int scan_points = kDefaultScanPoints;
  double tol = kDefaultRootTol;
  double half_width = 1.0;
  double collapse_tol = 1e-6;
  unsigned workers = 1;
};

std::vector<SpectrumBranch> sweep_k(double v0, const ParamRange& k_range,
                                    const SweepOptions& options = {});
std::vector<SpectrumBranch> sweep_v0(double k, const ParamRange& v0_range,
                                     const SweepOptions& options = {});

/// Energies of all branches sampled at `param` (within 1e-9), sorted.
std::vector<double> cut(const std::vector<SpectrumBranch>& branches, double param);

/// Branch terminations at the lower edge eps = -|k| within `tol`, strictly before `before`.
int count_collapses(const std::vector<SpectrumBranch>& branches, double before, double tol = 1e-6);

struct LevelPair {
  double plus = 0.0;
  double minus = 0.0;
};

/// +-sqrt(2 n beta) for A = beta x.
LevelPair landau_levels_magnetic(double beta, int n);

/// -alpha k +- (1 - alpha^2)^{3/4} sqrt(2 n beta) for V = alpha A, A = beta x.
LevelPair landau_levels_proportional(double alpha, double beta, double k, int n);

}  // namespace dirac
