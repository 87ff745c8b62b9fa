#include "dirac/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "dirac/errors.hpp"
#include "dirac/spectrum.hpp"

namespace dirac {

namespace {

constexpr cdouble kI{0.0, 1.0};

struct Term {
  cdouble amp;
  cdouble rate;
  double origin;
};

std::vector<Term> psi1_terms(const RegionSolution& region) {
  std::vector<Term> out;
  const auto basis = region.basis();
  for (std::size_t b = 0; b < basis.size(); ++b) {
    for (const auto& t : basis[b]) out.push_back({region.coefficients[b] * t.weight, t.rate, t.origin});
  }
  return out;
}

// psi2 = (psi1' + i Delta psi1)/k acts termwise on exponentials.
std::vector<Term> psi2_terms(const RegionSolution& region, const QuantumLabel& label) {
  auto out = psi1_terms(region);
  const double delta = label.epsilon - region.level;
  for (auto& t : out) t.amp *= (t.rate + kI * delta) / label.k;
  return out;
}

// (e^z - 1)/z, accurate near z = 0.
cdouble exprel(cdouble z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return (std::exp(z) - 1.0) / z;
}

// Integral over [x0, x1] of (a or conj(a)) * b, both sums of exponentials.
cdouble integrate_product(const std::vector<Term>& a, bool conj_a, const std::vector<Term>& b, double x0,
                          double x1) {
  const bool left_open = std::isinf(x0);
  const bool right_open = std::isinf(x1);
  const double ref = left_open ? x1 : x0;
  cdouble total = 0.0;
  for (const auto& ta : a) {
    const cdouble amp_a = conj_a ? std::conj(ta.amp) : ta.amp;
    const cdouble rate_a = conj_a ? std::conj(ta.rate) : ta.rate;
    for (const auto& tb : b) {
      const cdouble s = rate_a + tb.rate;
      const cdouble at_ref = amp_a * tb.amp * std::exp(rate_a * (ref - ta.origin) + tb.rate * (ref - tb.origin));
      cdouble integral;
      if (left_open && right_open) {
        throw Error(ErrorKind::InvalidArgument, "integration over the whole line needs a split point");
      } else if (left_open) {
        if (!(s.real() > 0.0)) throw Error(ErrorKind::InvalidArgument, "non-decaying left tail");
        integral = 1.0 / s;
      } else if (right_open) {
        if (!(s.real() < 0.0)) throw Error(ErrorKind::InvalidArgument, "non-decaying right tail");
        integral = -1.0 / s;
      } else {
        const double w = x1 - x0;
        integral = w * exprel(s * w);
      }
      total += at_ref * integral;
    }
  }
  return total;
}

const std::vector<double>& breakpoints_of(const PiecewiseState& s) { return s.potential.as_piecewise()->breakpoints; }

// Splits the line at the union of both states' breakpoints and integrates the
// product of the selected components region by region.
template <class TermsA, class TermsB>
cdouble integrate_pair(const PiecewiseState& a, const PiecewiseState& b, TermsA&& terms_a, bool conj_a,
                       TermsB&& terms_b) {
  std::vector<double> cuts = breakpoints_of(a);
  cuts.insert(cuts.end(), breakpoints_of(b).begin(), breakpoints_of(b).end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double inf = std::numeric_limits<double>::infinity();
  cdouble total = 0.0;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double x0 = i == 0 ? -inf : cuts[i - 1];
    const double x1 = i == cuts.size() ? inf : cuts[i];
    const double probe = std::isinf(x0) ? x1 - 1.0 : (std::isinf(x1) ? x0 + 1.0 : 0.5 * (x0 + x1));
    total += integrate_product(terms_a(a.regions[a.region_index(probe)]), conj_a,
                               terms_b(b.regions[b.region_index(probe)]), x0, x1);
  }
  return total;
}

double norm_squared_psi1(const PiecewiseState& s) {
  const auto t1 = [](const RegionSolution& r) { return psi1_terms(r); };
  return integrate_pair(s, s, t1, true, t1).real();
}

void build_grid(PiecewiseState& state, const StateOptions& options) {
  const auto& bps = breakpoints_of(state);
  const double p_min = std::min(state.regions.front().wavenumber, state.regions.back().wavenumber);
  const double half = std::max(std::abs(bps.front()), std::abs(bps.back())) + options.tail_decay_lengths / p_min;
  const int n = std::max(options.grid_points, 3);
  state.grid.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) state.grid[static_cast<std::size_t>(i)] = -half + 2.0 * half * i / (n - 1);
  state.resample();
}

}  // namespace

std::function<cdouble(double)> partner_component(std::function<ComplexJet(double)> psi1, const QuantumLabel& label,
                                                 const Potential1D& V) {
  if (label.k == 0.0) throw Error(ErrorKind::DegenerateMomentum, "partner component needs k != 0");
  return [psi1 = std::move(psi1), label, V](double x) {
    const auto jet = psi1(x);
    const double delta = label.epsilon - V.value(x);
    return (jet.slope + kI * delta * jet.value) / label.k;
  };
}

std::size_t PiecewiseState::region_index(double x) const {
  const auto& bps = breakpoints_of(*this);
  return static_cast<std::size_t>(std::upper_bound(bps.begin(), bps.end(), x) - bps.begin());
}

PiecewiseState::Sample PiecewiseState::at(double x) const {
  const auto& region = regions[region_index(x)];
  const double delta = label.epsilon - region.level;
  Sample s{};
  for (const auto& t : psi1_terms(region)) {
    const cdouble e = t.amp * std::exp(t.rate * (x - t.origin));
    const cdouble partner = (t.rate + kI * delta) / label.k;
    s.psi1 += e;
    s.dpsi1 += t.rate * e;
    s.d2psi1 += t.rate * t.rate * e;
    s.psi2 += partner * e;
    s.dpsi2 += partner * t.rate * e;
  }
  return s;
}

void PiecewiseState::resample() {
  psi1.resize(grid.size());
  psi2.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto s = at(grid[i]);
    psi1[i] = s.psi1;
    psi2[i] = s.psi2;
  }
}

void PiecewiseState::scale(cdouble factor) {
  for (auto& r : regions) {
    for (auto& c : r.coefficients) c *= factor;
  }
  for (auto& v : psi1) v *= factor;
  for (auto& v : psi2) v *= factor;
}

PiecewiseState assemble_state(const QuantumLabel& label, const Potential1D& pot, const StateOptions& options) {
  if (label.k == 0.0) throw Error(ErrorKind::DegenerateMomentum, "bound states need k != 0");
  auto sys = assemble_match_system(label, pot);

  // Equilibrate columns so exponentially small basis values do not fake a small singular value.
  const Eigen::VectorXd col_norms = sys.matrix.colwise().norm();
  Eigen::MatrixXcd scaled = sys.matrix;
  for (Eigen::Index c = 0; c < scaled.cols(); ++c) scaled.col(c) /= col_norms(c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cut = options.singular_threshold * sigma(0);
  const auto nullity = (sigma.array() < cut).count();
  if (nullity == 0) {
    throw Error(ErrorKind::NotAnEigenvalue, "matching system is regular at eps=" + std::to_string(label.epsilon) +
                                                " (sigma_min/sigma_max=" +
                                                std::to_string(sigma(sigma.size() - 1) / sigma(0)) + ")");
  }
  if (nullity > 1) {
    throw Error(ErrorKind::DegenerateRoot, "nullspace of dimension " + std::to_string(nullity));
  }
  const Eigen::VectorXcd null = svd.matrixV().col(sigma.size() - 1).cwiseQuotient(col_norms.cast<cdouble>());

  PiecewiseState state;
  state.label = label;
  state.potential = pot;
  state.regions = std::move(sys.regions);
  Eigen::Index idx = 0;
  for (auto& r : state.regions) {
    r.coefficients.resize(r.basis_size());
    for (auto& c : r.coefficients) c = null(idx++);
  }

  const double raw = 4.0 * norm_squared_psi1(state);
  state.norm = 1.0 / std::sqrt(raw);
  for (auto& r : state.regions) {
    for (auto& c : r.coefficients) c *= state.norm;
  }
  build_grid(state, options);
  return fix_phase(std::move(state));
}

PiecewiseState assemble_square_well_state(const QuantumLabel& label, double v0, double half_width,
                                          const StateOptions& options) {
  return assemble_state(label, Potential1D::square_well(v0, half_width), options);
}

std::vector<PiecewiseState> square_well_bound_states(double k, double v0, double half_width) {
  std::vector<PiecewiseState> out;
  const auto pot = Potential1D::square_well(v0, half_width);
  for (double eps : find_roots(square_well_secular(k, v0, half_width), kDefaultScanPoints, 1e-13)) {
    out.push_back(assemble_state({k, eps}, pot));
  }
  return out;
}

std::vector<PiecewiseState> bound_states(double k, const Potential1D& pot) {
  std::vector<PiecewiseState> out;
  for (double eps : find_roots(general_secular(k, pot), kDefaultScanPoints, 1e-13)) {
    out.push_back(assemble_state({k, eps}, pot));
  }
  return out;
}

double refine_square_well_root(double k, double guess, double v0, double half_width, double window) {
  auto f = square_well_secular(k, v0, half_width);
  const auto roots = find_roots_between(f, guess - window, guess + window, 64, 1e-14);
  if (roots.empty()) {
    throw Error(ErrorKind::NotAnEigenvalue, "no secular root within " + std::to_string(window) + " of " +
                                                std::to_string(guess));
  }
  return *std::min_element(roots.begin(), roots.end(),
                           [&](double a, double b) { return std::abs(a - guess) < std::abs(b - guess); });
}

PiecewiseState fix_phase(PiecewiseState state) {
  const auto t1 = [](const RegionSolution& r) { return psi1_terms(r); };
  const auto t2 = [&state](const RegionSolution& r) { return psi2_terms(r, state.label); };
  const cdouble overlap = integrate_pair(state, state, t1, false, t2);  // int psi1 psi2
  const double n1 = integrate_pair(state, state, t1, true, t1).real();
  const double n2 = integrate_pair(state, state, t2, true, t2).real();
  const double bound = std::sqrt(n1 * n2);
  if (!(bound > 0.0) || std::abs(std::abs(overlap) - bound) > 1e-8 * bound) {
    throw Error(ErrorKind::NotConjugatePair, "psi2 is not proportional to conj(psi1)");
  }
  // With c psi2 = conj(c psi1), c^2 * int psi1 psi2 = int |c psi1|^2 > 0.
  state.scale(std::polar(1.0, -0.5 * std::arg(overlap)));

  const cdouble origin = state.at(0.0).psi1;
  double peak = 0.0;
  for (const auto& v : state.psi1) peak = std::max(peak, std::abs(v));
  const bool use_real = std::abs(origin.real()) > 1e-9 * peak;
  const double sign = use_real ? origin.real() : origin.imag();
  if (sign < 0.0) state.scale(-1.0);
  return state;
}

RealSpinor to_real_spinor(const PiecewiseState& state) {
  RealSpinor out;
  out.x = state.grid;
  out.psi1.reserve(state.psi1.size());
  out.psi2.reserve(state.psi1.size());
  for (const auto& v : state.psi1) {
    out.psi1.push_back(2.0 * v.real());
    out.psi2.push_back(-2.0 * v.imag());
  }
  return out;
}

std::vector<cdouble> from_real_spinor(const RealSpinor& spinor) {
  std::vector<cdouble> out(spinor.psi1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * cdouble(spinor.psi1[i], -spinor.psi2[i]);
  return out;
}

DensityProfile probability_density(const PiecewiseState& state) {
  DensityProfile out;
  out.x = state.grid;
  out.rho.reserve(state.grid.size());
  out.jy.reserve(state.grid.size());
  for (const auto& v : state.psi1) {
    out.rho.push_back(4.0 * (v.real() * v.real() + v.imag() * v.imag()));
    out.jy.push_back(-8.0 * v.real() * v.imag());
  }
  out.jx.assign(state.grid.size(), 0.0);
  return out;
}

DensityProfile current_density(const PiecewiseState& state) { return probability_density(state); }

int count_density_nodes(const DensityProfile& profile, double rel) {
  const auto& rho = profile.rho;
  if (rho.size() < 3) return 0;
  const double limit = rel * *std::max_element(rho.begin(), rho.end());
  int nodes = 0;
  for (std::size_t i = 1; i + 1 < rho.size(); ++i) {
    if (rho[i] <= rho[i - 1] && rho[i] < rho[i + 1] && rho[i] < limit) ++nodes;
  }
  return nodes;
}

int count_sign_changes(const std::vector<double>& values, double rel) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double floor = rel * peak;
  int changes = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

cdouble pt_eigenvalue(const PiecewiseState& state, double tol) {
  cdouble num = 0.0;
  double den = 0.0;
  std::vector<cdouble> reflected(state.grid.size());
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    reflected[i] = std::conj(state.at(-state.grid[i]).psi1);
    num += std::conj(state.psi1[i]) * reflected[i];
    den += std::norm(state.psi1[i]);
  }
  const cdouble lambda = num / den;
  double misfit = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    misfit = std::max(misfit, std::abs(reflected[i] - lambda * state.psi1[i]));
    peak = std::max(peak, std::abs(state.psi1[i]));
  }
  if (misfit > tol * peak) {
    throw Error(ErrorKind::BrokenPTSymmetry,
                "state is not a PT eigenfunction (relative misfit " + std::to_string(misfit / peak) + ")");
  }
  return lambda;
}

cdouble bilinear_bracket(const PiecewiseState& a, const PiecewiseState& b) {
  if (a.label.k != b.label.k) throw Error(ErrorKind::MismatchedMomentum, "states carry different k");
  const auto t1 = [](const RegionSolution& r) { return psi1_terms(r); };
  const auto t2a = [&a](const RegionSolution& r) { return psi2_terms(r, a.label); };
  const auto t2b = [&b](const RegionSolution& r) { return psi2_terms(r, b.label); };
  return integrate_pair(a, b, t2a, false, t1) + integrate_pair(a, b, t1, false, t2b);
}

cdouble inner_product(const PiecewiseState& a, const PiecewiseState& b) { return 2.0 * bilinear_bracket(a, b); }

double total_probability(const PiecewiseState& state) { return 4.0 * norm_squared_psi1(state); }

Residuals residuals(const PiecewiseState& state, double margin) {
  Residuals out;
  const auto& bps = breakpoints_of(state);
  const double k = state.label.k;
  const double eps = state.label.epsilon;
  for (double x : state.grid) {
    const bool near_break =
        std::any_of(bps.begin(), bps.end(), [&](double b) { return std::abs(x - b) <= margin; });
    if (near_break) continue;
    const auto s = state.at(x);
    const double v = state.potential.value(x);
    const double delta = eps - v;
    const cdouble v_eff = effective_potential_electric(state.potential, eps, x);
    const double e_eff = effective_energy(state.label);
    out.second_order = std::max(out.second_order, std::abs(-s.d2psi1 + (v_eff - e_eff) * s.psi1));

    const cdouble c = std::conj(s.psi1);
    const cdouble dc = std::conj(s.dpsi1);
    const double row1 = std::abs(dc - kI * delta * c - k * s.psi1);
    const double row2 = std::abs(s.dpsi1 + kI * delta * s.psi1 - k * c);
    out.first_order = std::max({out.first_order, row1, row2});
    out.conjugacy = std::max(out.conjugacy, std::abs(s.psi2 - c));
  }
  return out;
}

}  // namespace dirac
