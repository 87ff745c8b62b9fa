#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace dirac {

// Potential families in reduced units. Each is a plain aggregate; the
// Potential1D wrapper enforces the invariants at construction.

struct PiecewiseConstant {
  std::vector<double> breakpoints;  // strictly increasing
  std::vector<double> values;       // breakpoints.size() + 1 entries, left to right
};

// slope * x + intercept
struct Linear {
  double slope = 0.0;
  double intercept = 0.0;
};

// strength / |x - center|. A positive cutoff clamps |x - center| from below,
// removing the singularity; cutoff == 0 leaves x = center singular.
struct CoulombLike {
  double strength = 0.0;
  double cutoff = 0.0;
  double center = 0.0;
};

// strength / (1 + (x - center)^2)
struct Lorentzian {
  double strength = 0.0;
  double center = 0.0;
};

// strength * tanh(x - center)
struct Tanh {
  double strength = 0.0;
  double center = 0.0;
};

using PotentialFamily = std::variant<PiecewiseConstant, Linear, CoulombLike, Lorentzian, Tanh>;

class Potential1D {
 public:
  /// Zero potential (an empty piecewise profile).
  Potential1D();
  explicit Potential1D(PotentialFamily family);

  static Potential1D piecewise(std::vector<double> breakpoints, std::vector<double> values);
  /// -v0 on |x| < half_width, 0 outside.
  static Potential1D square_well(double v0, double half_width = 1.0);
  static Potential1D linear(double slope);
  static Potential1D coulomb_like(double strength, double cutoff = 0.0);
  static Potential1D lorentzian(double strength);
  static Potential1D tanh(double strength);

  const PotentialFamily& family() const noexcept { return family_; }
  const PiecewiseConstant* as_piecewise() const noexcept {
    return std::get_if<PiecewiseConstant>(&family_);
  }

  /// Profile value. At a piecewise breakpoint the right-limit value is returned.
  double value(double x) const;
  /// First derivative; throws DiscontinuityPoint at a piecewise breakpoint.
  double derivative(double x) const;

  bool is_identically_zero() const noexcept;
  /// Points where the profile or its derivative is not smooth.
  std::vector<double> kinks() const;
  /// Limits at -inf and +inf, when finite.
  std::optional<std::pair<double, double>> asymptotes() const;
  /// Window on which the profile varies; used for probe grids.
  std::pair<double, double> support() const;
  /// The same profile with x replaced by x - shift.
  Potential1D shifted(double shift) const;

 private:
  PotentialFamily family_;
};

inline double evaluate_potential(const Potential1D& pot, double x) { return pot.value(x); }

void to_json(nlohmann::json& j, const Potential1D& pot);
void from_json(const nlohmann::json& j, Potential1D& pot);

}  // namespace dirac
