#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "dirac/potential.hpp"

namespace dirac {

/// Conversion between physical and reduced quantities. The solvers only ever
/// see reduced values: eps = E / (hbar v_F), V_red = V / (hbar v_F).
struct ReducedUnits {
  double fermi_velocity = 1.0;
  double hbar = 1.0;

  void validate() const;
  double energy_scale() const { return hbar * fermi_velocity; }
  double to_reduced_energy(double energy) const { return energy / energy_scale(); }
  double to_physical_energy(double epsilon) const { return epsilon * energy_scale(); }
};

/// Conserved y-momentum k and reduced energy epsilon.
struct QuantumLabel {
  double k = 0.0;
  double epsilon = 0.0;
};

/// Electric potential V(x) and magnetic potential A(x), both reduced.
/// `proportionality` records a claimed alpha with V = alpha * A.
struct FieldConfig {
  std::optional<Potential1D> electric;
  std::optional<Potential1D> magnetic;
  std::optional<double> proportionality;

  void validate() const;
  double electric_at(double x) const { return electric ? electric->value(x) : 0.0; }
  double magnetic_at(double x) const { return magnetic ? magnetic->value(x) : 0.0; }
  /// The same fields translated by `shift` along x.
  FieldConfig shifted(double shift) const;
};

enum class Regime { Trigonometric, Hyperbolic, Parabolic };

struct CaseClass {
  enum class Kind { PureMagnetic, PureElectric, Proportional, Unsupported };
  Kind kind = Kind::Unsupported;
  double alpha = 0.0;                   // meaningful for Proportional only
  Regime regime = Regime::Trigonometric;  // meaningful for Proportional only

  bool operator==(const CaseClass&) const = default;
};

const char* to_string(CaseClass::Kind kind) noexcept;
const char* to_string(Regime regime) noexcept;

Regime regime_for(double alpha) noexcept;

/// Checks V - alpha*A on a 101-point probe grid over the fields' support.
bool proportionality_holds(const FieldConfig& config, double alpha, double tol = 1e-12);

CaseClass classify_case(const FieldConfig& config);

/// [[W, -Delta], [Delta, -W]] with W = k + A(x), Delta = eps - V(x).
Eigen::Matrix2d build_M(const FieldConfig& config, const QuantumLabel& label, double x);

/// i V'(x) + 2 eps V(x) - V(x)^2. Breakpoint deltas are not represented here.
std::complex<double> effective_potential_electric(const Potential1D& V, double epsilon, double x);

/// -(k^2 - eps^2)
double effective_energy(const QuantumLabel& label) noexcept;

/// W = k + A(x), the superpotential of the pure magnetic partner pair.
double magnetic_superpotential(const QuantumLabel& label, const Potential1D& A, double x);

struct ProportionalSuperpotential {
  double W = 0.0;
  double mu = 0.0;
};

/// Superpotential and spectral parameter for V = alpha*A, |alpha| < 1:
///   W  = (eps*alpha + k)/sqrt(1-alpha^2) + sqrt(1-alpha^2) A(x)
///   mu = (eps + alpha*k)^2 / (1-alpha^2)
ProportionalSuperpotential superpotential_proportional(double alpha, const QuantumLabel& label,
                                                       const Potential1D& A, double x);

}  // namespace dirac
