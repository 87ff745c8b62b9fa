#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/piecewise.hpp"
#include "dirac/spectrum.hpp"

namespace dirac {

// Independent checks: finite differences for the real SUSY Hamiltonians and
// direct shooting on the real first-order Dirac system.

struct GridSpec {
  enum class Boundary { Dirichlet };

  double x_min = -12.0;
  double x_max = 12.0;
  int points = 4001;
  Boundary boundary = Boundary::Dirichlet;

  void validate() const;
  double spacing() const { return (x_max - x_min) / (points - 1); }
};

/// Lowest `count` eigenvalues of -d^2/dx^2 + potential on the three-point
/// stencil with Dirichlet ends. With convergence_tol > 0 the grid is also
/// solved at half spacing and GridTooCoarse is thrown if any eigenvalue moves
/// by more than the tolerance.
std::vector<double> grid_eigenvalues(const std::function<double(double)>& potential,
                                     const GridSpec& spec, int count, double convergence_tol = 0.0);

/// Pure magnetic A = beta x: eps_n = sqrt of the spectrum of -d^2 + W^2 - W'
/// with W = k + beta x. Returns the nonnegative branch for n = 0..count-1.
std::vector<double> landau_oracle_magnetic(double beta, double k, int count, const GridSpec& spec);

/// V = alpha A, A = beta x: mu_n from -d^2 + W^2 - W' with the proportional
/// superpotential (solved self-consistently in eps), mapped back to
/// eps = -alpha k +- sqrt((1 - alpha^2) mu_n).
std::vector<LevelPair> landau_oracle_proportional(double alpha, double beta, double k, int count,
                                                  const GridSpec& spec);

struct ShootingOptions {
  double step = 1e-3;
  std::optional<double> x_left;
  std::optional<double> x_right;
  std::optional<double> x_match;
  /// Smooth potentials are cut where |V - V(+-inf)| < relative_cutoff * max|V|.
  double relative_cutoff = 1e-8;
  double max_extent = 50.0;
};

/// Integration window and matching point used by dirac_shooting.
struct ShootingWindow {
  double x_left = 0.0;
  double x_right = 0.0;
  double x_match = 0.0;
};

ShootingWindow shooting_window(const FieldConfig& config, const QuantumLabel& label,
                               const ShootingOptions& options = {});

/// det[Psi_L(x_m) Psi_R(x_m)] of the solutions of d/dx Psi = M Psi that decay
/// at the left and right ends, each normalized to unit length. Zeros in eps
/// are bound states.
double dirac_shooting(const FieldConfig& config, const QuantumLabel& label,
                      const ShootingOptions& options = {});

/// Energies where both exteriors are evanescent, for fields with finite limits.
AdmissibleBand shooting_band(const FieldConfig& config, double k);

/// Shooting determinant as a secular function over `band`
/// (defaults to shooting_band). Energies whose window ends are not evanescent
/// evaluate to OutsideAdmissibleBand.
SecularFunction shooting_secular(const FieldConfig& config, double k, const ShootingOptions& options = {},
                                 std::optional<AdmissibleBand> band = std::nullopt);

}  // namespace dirac
