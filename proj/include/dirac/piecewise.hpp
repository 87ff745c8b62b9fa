#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "dirac/field.hpp"
#include "dirac/potential.hpp"

namespace dirac {

using cdouble = std::complex<double>;

/// Open energy interval (lo, hi).
struct AdmissibleBand {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const noexcept { return !(hi > lo); }
  bool contains(double eps) const noexcept { return eps > lo && eps < hi; }
  double width() const noexcept { return empty() ? 0.0 : hi - lo; }
};

enum class RegionKind { EvanescentLeft, Oscillatory, Evanescent, EvanescentRight };

const char* to_string(RegionKind kind) noexcept;

/// One term weight * exp(rate * (x - origin)).
struct ExpTerm {
  cdouble weight;
  cdouble rate;
  double origin = 0.0;
};

/// Closed-form solution of the effective Schroedinger equation on one
/// constant-potential interval.
///
/// Basis per kind (the coefficient order follows the basis order):
///   EvanescentLeft   A e^{p x}
///   Oscillatory      C e^{i q x} + D e^{-i q x}
///   Evanescent       C cosh(p (x - m)) + D sinh(p (x - m)),  m = interval midpoint
///   EvanescentRight  F e^{-p x}
struct RegionSolution {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double level = 0.0;  // potential value on the interval
  RegionKind kind = RegionKind::Oscillatory;
  double wavenumber = 0.0;  // p for evanescent kinds, q for oscillatory
  std::vector<cdouble> coefficients;

  std::size_t basis_size() const noexcept {
    return kind == RegionKind::EvanescentLeft || kind == RegionKind::EvanescentRight ? 1 : 2;
  }
  /// Basis functions as sums of exponential terms.
  std::vector<std::vector<ExpTerm>> basis() const;
};

/// Homogeneous matching system; unknowns are the region coefficients left to right.
struct MatchSystem {
  Eigen::MatrixXcd matrix;
  std::vector<RegionSolution> regions;
};

struct Wavenumbers {
  double p = 0.0;  // exterior decay, sqrt(k^2 - eps^2)
  double q = 0.0;  // well interior, sqrt((eps + v0)^2 - k^2)
};

/// Wavenumbers of the square well of depth v0. Throws OutsideAdmissibleBand
/// when either radicand is not strictly positive.
Wavenumbers region_wavenumbers(const QuantumLabel& label, double v0);

/// p q cos(2 L q) - (eps (eps + v0) - k^2) sin(2 L q) for the well of depth v0
/// and half width L.
double secular_det_square_well(double k, double epsilon, double v0, double half_width = 1.0);

/// Region kinds and wavenumbers of a piecewise-constant potential at `label`,
/// with empty coefficient lists.
std::vector<RegionSolution> region_layout(const QuantumLabel& label, const Potential1D& pot);

/// Value and jump conditions at each breakpoint x0 with J = V(x0+) - V(x0-):
///   psi(x0-) = psi(x0+),   psi'(x0+) - psi'(x0-) = i J psi(x0).
MatchSystem assemble_match_system(const QuantumLabel& label, const Potential1D& pot);

/// Real secular function by transfer-matrix propagation from the left decaying
/// solution; the value is the right growing amplitude with the phase of the
/// real Dirac solution removed.
double secular_det_general(const QuantumLabel& label, const Potential1D& pot);

/// Real function of eps at fixed k whose zeros inside `band` are bound states.
struct SecularFunction {
  std::function<double(double)> eval;
  AdmissibleBand band;
  /// Energies where the function vanishes for degenerate reasons (q = 0, p = 0).
  std::vector<double> degenerate_points;

  double operator()(double eps) const { return eval(eps); }
};

/// (max(-|k|, |k| - v0), |k|); empty when v0 <= 0 or k == 0.
AdmissibleBand square_well_band(double k, double v0);

/// Energies where both exterior regions decay.
AdmissibleBand outer_band(double k, const Potential1D& pot);

SecularFunction square_well_secular(double k, double v0, double half_width = 1.0);
SecularFunction general_secular(double k, const Potential1D& pot);

}  // namespace dirac
