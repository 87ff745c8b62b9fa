#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dirac/field.hpp"
#include "dirac/piecewise.hpp"

namespace dirac {

struct ComplexJet {
  cdouble value;
  cdouble slope;
};

/// psi2 = (psi1' + i Delta psi1) / k with Delta = eps - V(x). Throws
/// DegenerateMomentum for k = 0.
std::function<cdouble(double)> partner_component(std::function<ComplexJet(double)> psi1,
                                                 const QuantumLabel& label, const Potential1D& V);

/// Bound state of a piecewise-constant electric potential, held as closed-form
/// region coefficients of psi1 (the partner psi2 follows from them) plus a
/// sampled grid.
struct PiecewiseState {
  struct Sample {
    cdouble psi1;
    cdouble psi2;
    cdouble dpsi1;
    cdouble dpsi2;
    cdouble d2psi1;
  };

  QuantumLabel label;
  Potential1D potential;
  std::vector<RegionSolution> regions;  // coefficients of psi1
  std::vector<double> grid;
  std::vector<cdouble> psi1;
  std::vector<cdouble> psi2;
  double norm = 1.0;  // factor applied to the raw nullspace vector

  /// Closed-form evaluation; a point on a breakpoint uses the region to its right.
  Sample at(double x) const;
  std::size_t region_index(double x) const;
  /// Re-samples psi1/psi2 on `grid` from the coefficients.
  void resample();
  /// Multiplies every coefficient (and the samples) by `factor`.
  void scale(cdouble factor);
};

struct StateOptions {
  /// Nullspace cut on sigma_i / sigma_max of the column-equilibrated system.
  double singular_threshold = 1e-8;
  int grid_points = 4001;
  /// Grid reaches this many exterior decay lengths past the outer breakpoints.
  double tail_decay_lengths = 12.0;
};

/// Normalized, phase-fixed eigenstate at a root of the matching system.
/// Throws NotAnEigenvalue or DegenerateRoot from the nullspace dimension.
PiecewiseState assemble_state(const QuantumLabel& label, const Potential1D& pot, const StateOptions& options = {});

PiecewiseState assemble_square_well_state(const QuantumLabel& label, double v0, double half_width = 1.0,
                                          const StateOptions& options = {});

/// All bound states of the square well at (k, v0), ordered by energy.
std::vector<PiecewiseState> square_well_bound_states(double k, double v0, double half_width = 1.0);

/// All bound states of a piecewise-constant well at k, ordered by energy.
std::vector<PiecewiseState> bound_states(double k, const Potential1D& pot);

/// Bisection on the square-well secular function around `guess`, for energies
/// quoted to a few digits.
double refine_square_well_root(double k, double guess, double v0, double half_width = 1.0,
                               double window = 1e-3);

/// Applies the global phase making psi2 = conj(psi1), then the sign making
/// Re psi1(0) > 0 (Im psi1(0) > 0 when the real part vanishes). Throws
/// NotConjugatePair if psi2 is not proportional to conj(psi1).
PiecewiseState fix_phase(PiecewiseState state);

struct RealSpinor {
  std::vector<double> x;
  std::vector<double> psi1;  //  2 Re psi1~
  std::vector<double> psi2;  // -2 Im psi1~
};

RealSpinor to_real_spinor(const PiecewiseState& state);
/// psi1~ = (psi1 - i psi2) / 2
std::vector<cdouble> from_real_spinor(const RealSpinor& spinor);

struct DensityProfile {
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> jx;  // identically zero
  std::vector<double> jy;
};

/// rho = 4 |psi1~|^2 on the state grid.
DensityProfile probability_density(const PiecewiseState& state);
/// j_y = -8 Re psi1~ Im psi1~, j_x = 0 on the state grid (rho filled in as well).
DensityProfile current_density(const PiecewiseState& state);

/// Interior local minima of rho below rel * max(rho). The default counts every
/// dip: rho of a complex state rarely reaches zero.
int count_density_nodes(const DensityProfile& profile, double rel = 1.0);

/// Sign changes of a real sampled function, ignoring samples below rel * max|f|.
int count_sign_changes(const std::vector<double>& values, double rel = 1e-6);

/// lambda with psi1(-x)* = lambda psi1(x); throws BrokenPTSymmetry when the
/// relative misfit exceeds `tol`.
cdouble pt_eigenvalue(const PiecewiseState& state, double tol = 1e-6);

/// Integral of (psi2^a psi1^b + psi1^a psi2^b), exact per region.
cdouble bilinear_bracket(const PiecewiseState& a, const PiecewiseState& b);

/// Spinor overlap, 2 * bilinear_bracket: equals the integral of
/// psi1^a psi1^b + psi2^a psi2^b of the real components, so <s, s> = int rho = 1.
cdouble inner_product(const PiecewiseState& a, const PiecewiseState& b);

/// Exact integral of rho = 4 |psi1~|^2.
double total_probability(const PiecewiseState& state);

struct Residuals {
  double second_order = 0.0;  // -psi1'' + (V_eff - E_eff) psi1
  double first_order = 0.0;   // both rows of the coupled system with psi2 = conj(psi1)
  double conjugacy = 0.0;     // max |psi2 - conj(psi1)|
};

/// Pointwise maxima over grid points farther than `margin` from any breakpoint.
Residuals residuals(const PiecewiseState& state, double margin = 1e-6);

}  // namespace dirac
