#include "dirac/field.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

constexpr int kProbePoints = 101;
constexpr double kUnitAlphaTol = 1e-12;

}  // namespace

void ReducedUnits::validate() const {
  if (!(fermi_velocity > 0.0) || !(hbar > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "fermi_velocity and hbar must be positive");
  }
}

void FieldConfig::validate() const {
  if (!electric && !magnetic) {
    throw Error(ErrorKind::InvalidArgument, "field configuration needs an electric or magnetic part");
  }
}

FieldConfig FieldConfig::shifted(double shift) const {
  FieldConfig out = *this;
  if (out.electric) out.electric = out.electric->shifted(shift);
  if (out.magnetic) out.magnetic = out.magnetic->shifted(shift);
  return out;
}

const char* to_string(CaseClass::Kind kind) noexcept {
  switch (kind) {
    case CaseClass::Kind::PureMagnetic: return "PureMagnetic";
    case CaseClass::Kind::PureElectric: return "PureElectric";
    case CaseClass::Kind::Proportional: return "Proportional";
    case CaseClass::Kind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Trigonometric: return "Trigonometric";
    case Regime::Hyperbolic: return "Hyperbolic";
    case Regime::Parabolic: return "Parabolic";
  }
  return "Unknown";
}

Regime regime_for(double alpha) noexcept {
  const double a = std::abs(alpha);
  if (std::abs(a - 1.0) <= kUnitAlphaTol) return Regime::Parabolic;
  return a < 1.0 ? Regime::Trigonometric : Regime::Hyperbolic;
}

bool proportionality_holds(const FieldConfig& config, double alpha, double tol) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto* pot : {config.electric ? &*config.electric : nullptr,
                          config.magnetic ? &*config.magnetic : nullptr}) {
    if (!pot) continue;
    const auto [a, b] = pot->support();
    lo = first ? a : std::min(lo, a);
    hi = first ? b : std::max(hi, b);
    first = false;
  }
  if (first) return false;
  for (int i = 0; i < kProbePoints; ++i) {
    const double x = lo + (hi - lo) * i / (kProbePoints - 1);
    try {
      if (std::abs(config.electric_at(x) - alpha * config.magnetic_at(x)) > tol) return false;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularPoint) throw;
    }
  }
  return true;
}

CaseClass classify_case(const FieldConfig& config) {
  const bool no_magnetic = !config.magnetic || config.magnetic->is_identically_zero();
  const bool no_electric = !config.electric || config.electric->is_identically_zero();
  if (no_magnetic) return {CaseClass::Kind::PureElectric};
  if (no_electric) return {CaseClass::Kind::PureMagnetic};
  if (config.proportionality && proportionality_holds(config, *config.proportionality)) {
    const double alpha = *config.proportionality;
    return {CaseClass::Kind::Proportional, alpha, regime_for(alpha)};
  }
  return {CaseClass::Kind::Unsupported};
}

Eigen::Matrix2d build_M(const FieldConfig& config, const QuantumLabel& label, double x) {
  const double w = label.k + config.magnetic_at(x);
  const double delta = label.epsilon - config.electric_at(x);
  Eigen::Matrix2d m;
  m << w, -delta, delta, -w;
  return m;
}

std::complex<double> effective_potential_electric(const Potential1D& V, double epsilon, double x) {
  const double v = V.value(x);
  const double dv = V.derivative(x);
  return {2.0 * epsilon * v - v * v, dv};
}

double effective_energy(const QuantumLabel& label) noexcept {
  return -(label.k * label.k - label.epsilon * label.epsilon);
}

double magnetic_superpotential(const QuantumLabel& label, const Potential1D& A, double x) {
  return label.k + A.value(x);
}

ProportionalSuperpotential superpotential_proportional(double alpha, const QuantumLabel& label,
                                                       const Potential1D& A, double x) {
  if (regime_for(alpha) != Regime::Trigonometric) {
    throw Error(ErrorKind::UnsupportedRegime, "proportional fields need |alpha| < 1");
  }
  const double c2 = 1.0 - alpha * alpha;
  const double c = std::sqrt(c2);
  const double shifted = label.epsilon + alpha * label.k;
  return {(label.epsilon * alpha + label.k) / c + c * A.value(x), shifted * shifted / c2};
}

}  // namespace dirac
