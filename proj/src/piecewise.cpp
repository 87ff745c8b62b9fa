#include "dirac/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

constexpr cdouble kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

const PiecewiseConstant& require_piecewise(const Potential1D& pot) {
  const auto* pc = pot.as_piecewise();
  if (!pc) throw Error(ErrorKind::InvalidArgument, "matching needs a piecewise-constant potential");
  if (pc->breakpoints.empty()) {
    throw Error(ErrorKind::InvalidArgument, "matching needs at least one breakpoint");
  }
  return *pc;
}

// k^2 - (eps - v)^2: positive means evanescent, negative oscillatory.
double decay_squared(double k, double eps, double v) {
  const double a = std::abs(k);
  const double d = eps - v;
  return (a - d) * (a + d);
}

double outer_decay(double k, double eps, double v, const char* side) {
  const double p2 = decay_squared(k, eps, v);
  if (p2 < 0.0) {
    throw Error(ErrorKind::UnboundedStateRequest,
                std::string(side) + " exterior region is oscillatory at eps=" + std::to_string(eps));
  }
  if (p2 == 0.0) {
    throw Error(ErrorKind::OutsideAdmissibleBand,
                std::string(side) + " exterior decay rate vanishes at eps=" + std::to_string(eps));
  }
  return std::sqrt(p2);
}

struct ValueAndSlope {
  cdouble value;
  cdouble slope;
};

ValueAndSlope evaluate_terms(const std::vector<ExpTerm>& terms, double x) {
  ValueAndSlope out{};
  for (const auto& t : terms) {
    const cdouble e = t.weight * std::exp(t.rate * (x - t.origin));
    out.value += e;
    out.slope += t.rate * e;
  }
  return out;
}

}  // namespace

const char* to_string(RegionKind kind) noexcept {
  switch (kind) {
    case RegionKind::EvanescentLeft: return "EvanescentLeft";
    case RegionKind::Oscillatory: return "Oscillatory";
    case RegionKind::Evanescent: return "Evanescent";
    case RegionKind::EvanescentRight: return "EvanescentRight";
  }
  return "Unknown";
}

std::vector<std::vector<ExpTerm>> RegionSolution::basis() const {
  const double w = wavenumber;
  switch (kind) {
    case RegionKind::EvanescentLeft:
      return {{{1.0, w, 0.0}}};
    case RegionKind::EvanescentRight:
      return {{{1.0, -w, 0.0}}};
    case RegionKind::Oscillatory:
      return {{{1.0, kI * w, 0.0}}, {{1.0, -kI * w, 0.0}}};
    case RegionKind::Evanescent: {
      const double m = 0.5 * (x_lo + x_hi);
      return {{{0.5, w, m}, {0.5, -w, m}}, {{0.5, w, m}, {-0.5, -w, m}}};
    }
  }
  return {};
}

Wavenumbers region_wavenumbers(const QuantumLabel& label, double v0) {
  // Factored radicands keep accuracy next to the band edges.
  const double a = std::abs(label.k);
  const double p2 = (a - label.epsilon) * (a + label.epsilon);
  const double shifted = label.epsilon + v0;
  const double q2 = (shifted - a) * (shifted + a);
  if (!(p2 > 0.0)) {
    throw Error(ErrorKind::OutsideAdmissibleBand,
                "k^2 - eps^2 <= 0 (exterior not evanescent) at eps=" + std::to_string(label.epsilon));
  }
  if (!(q2 > 0.0)) {
    throw Error(ErrorKind::OutsideAdmissibleBand,
                "(eps + v0)^2 - k^2 <= 0 (interior not oscillatory) at eps=" +
                    std::to_string(label.epsilon));
  }
  return {std::sqrt(p2), std::sqrt(q2)};
}

double secular_det_square_well(double k, double epsilon, double v0, double half_width) {
  const auto [p, q] = region_wavenumbers({k, epsilon}, v0);
  const double arg = 2.0 * half_width * q;
  return p * q * std::cos(arg) - (epsilon * (epsilon + v0) - k * k) * std::sin(arg);
}

std::vector<RegionSolution> region_layout(const QuantumLabel& label, const Potential1D& pot) {
  const auto& pc = require_piecewise(pot);
  const auto& bps = pc.breakpoints;
  const std::size_t n = pc.values.size();
  std::vector<RegionSolution> regions(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& r = regions[j];
    r.x_lo = j == 0 ? -kInf : bps[j - 1];
    r.x_hi = j + 1 == n ? kInf : bps[j];
    r.level = pc.values[j];
    if (j == 0) {
      r.kind = RegionKind::EvanescentLeft;
      r.wavenumber = outer_decay(label.k, label.epsilon, r.level, "left");
    } else if (j + 1 == n) {
      r.kind = RegionKind::EvanescentRight;
      r.wavenumber = outer_decay(label.k, label.epsilon, r.level, "right");
    } else {
      const double d2 = decay_squared(label.k, label.epsilon, r.level);
      if (d2 == 0.0) {
        throw Error(ErrorKind::OutsideAdmissibleBand,
                    "interior wavenumber vanishes in region " + std::to_string(j));
      }
      r.kind = d2 > 0.0 ? RegionKind::Evanescent : RegionKind::Oscillatory;
      r.wavenumber = std::sqrt(std::abs(d2));
    }
  }
  return regions;
}

MatchSystem assemble_match_system(const QuantumLabel& label, const Potential1D& pot) {
  const auto& pc = require_piecewise(pot);
  MatchSystem sys;
  sys.regions = region_layout(label, pot);

  std::vector<Eigen::Index> offset(sys.regions.size() + 1, 0);
  for (std::size_t j = 0; j < sys.regions.size(); ++j) {
    offset[j + 1] = offset[j] + static_cast<Eigen::Index>(sys.regions[j].basis_size());
  }
  const Eigen::Index size = offset.back();
  sys.matrix = Eigen::MatrixXcd::Zero(size, size);

  for (std::size_t j = 0; j < pc.breakpoints.size(); ++j) {
    const double x0 = pc.breakpoints[j];
    const double jump = pc.values[j + 1] - pc.values[j];
    const auto row = static_cast<Eigen::Index>(2 * j);

    const auto left = sys.regions[j].basis();
    for (std::size_t b = 0; b < left.size(); ++b) {
      const auto [v, d] = evaluate_terms(left[b], x0);
      const Eigen::Index col = offset[j] + static_cast<Eigen::Index>(b);
      sys.matrix(row, col) = v;
      sys.matrix(row + 1, col) = d + kI * jump * v;
    }
    const auto right = sys.regions[j + 1].basis();
    for (std::size_t b = 0; b < right.size(); ++b) {
      const auto [v, d] = evaluate_terms(right[b], x0);
      const Eigen::Index col = offset[j + 1] + static_cast<Eigen::Index>(b);
      sys.matrix(row, col) = -v;
      sys.matrix(row + 1, col) = -d;
    }
  }
  return sys;
}

double secular_det_general(const QuantumLabel& label, const Potential1D& pot) {
  const auto* flat = pot.as_piecewise();
  if (flat && flat->breakpoints.empty()) {
    // A constant profile only has the pure growing solution.
    if (label.k == 0.0) throw Error(ErrorKind::DegenerateMomentum, "k = 0 has no decaying exterior");
    outer_decay(label.k, label.epsilon, flat->values.front(), "outer");
    return 1.0;
  }
  const auto& pc = require_piecewise(pot);
  if (label.k == 0.0) throw Error(ErrorKind::DegenerateMomentum, "k = 0 has no decaying exterior");
  const double k = label.k;
  const double eps = label.epsilon;
  const double v_left = pc.values.front();
  const double v_right = pc.values.back();
  const double p_left = outer_decay(k, eps, v_left, "left");
  const double p_right = outer_decay(k, eps, v_right, "right");

  // Left decaying solution normalized to psi = 1 at the first breakpoint.
  cdouble psi = 1.0;
  cdouble dpsi = p_left;
  const auto& bps = pc.breakpoints;
  for (std::size_t j = 0; j < bps.size(); ++j) {
    dpsi += kI * (pc.values[j + 1] - pc.values[j]) * psi;
    if (j + 1 == bps.size()) break;

    const double width = bps[j + 1] - bps[j];
    const double d2 = decay_squared(k, eps, pc.values[j + 1]);
    cdouble next_psi;
    cdouble next_dpsi;
    if (d2 > 0.0) {
      // cosh/sinh transfer scaled by e^{-kappa w}; a positive factor leaves zeros intact.
      const double kappa = std::sqrt(d2);
      const double t = kappa * width;
      const double c = 0.5 * (1.0 + std::exp(-2.0 * t));
      const double s = -0.5 * std::expm1(-2.0 * t);
      next_psi = c * psi + (s / kappa) * dpsi;
      next_dpsi = kappa * s * psi + c * dpsi;
    } else if (d2 < 0.0) {
      const double q = std::sqrt(-d2);
      const double c = std::cos(q * width);
      const double s = std::sin(q * width);
      next_psi = c * psi + (s / q) * dpsi;
      next_dpsi = -q * s * psi + c * dpsi;
    } else {
      next_psi = psi + width * dpsi;
      next_dpsi = dpsi;
    }
    const double scale = std::max(std::abs(next_psi), std::abs(next_dpsi));
    psi = next_psi / scale;
    dpsi = next_dpsi / scale;
  }

  const cdouble growing = 0.5 * (psi + dpsi / p_right);
  // A real Dirac solution has psi2 = conj(psi1) with psi2 = (psi1' + i Delta psi1)/k;
  // on an exterior exponential that fixes the phase to sqrt((p + i Delta)/|k|)^{-1}.
  const double abs_k = std::abs(k);
  const cdouble w_left = (p_left + kI * (eps - v_left)) / abs_k;
  const cdouble w_right = (p_right + kI * (eps - v_right)) / abs_k;
  return (growing * std::sqrt(w_right) / std::sqrt(w_left)).real();
}

AdmissibleBand square_well_band(double k, double v0) {
  const double a = std::abs(k);
  if (a == 0.0 || v0 <= 0.0) return {0.0, 0.0};
  return {std::max(-a, a - v0), a};
}

AdmissibleBand outer_band(double k, const Potential1D& pot) {
  const auto* flat = pot.as_piecewise();
  if (!flat) throw Error(ErrorKind::InvalidArgument, "matching needs a piecewise-constant potential");
  const auto& pc = *flat;
  const double a = std::abs(k);
  if (a == 0.0) return {0.0, 0.0};
  const double vl = pc.values.front();
  const double vr = pc.values.back();
  return {std::max(vl, vr) - a, std::min(vl, vr) + a};
}

SecularFunction square_well_secular(double k, double v0, double half_width) {
  if (!(half_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "half width must be positive");
  SecularFunction f;
  f.band = square_well_band(k, v0);
  const double a = std::abs(k);
  f.degenerate_points = {-a, a, a - v0, -a - v0};
  f.eval = [k, v0, half_width](double eps) { return secular_det_square_well(k, eps, v0, half_width); };
  return f;
}

SecularFunction general_secular(double k, const Potential1D& pot) {
  SecularFunction f;
  f.band = outer_band(k, pot);
  f.degenerate_points = {f.band.lo, f.band.hi};
  f.eval = [k, pot](double eps) { return secular_det_general({k, eps}, pot); };
  return f;
}

}  // namespace dirac
