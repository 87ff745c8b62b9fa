#include "dirac/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const PotentialFamily& family) {
  if (const auto* pc = std::get_if<PiecewiseConstant>(&family)) {
    if (pc->values.size() != pc->breakpoints.size() + 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "piecewise potential needs exactly one more value than breakpoints");
    }
    for (std::size_t i = 1; i < pc->breakpoints.size(); ++i) {
      if (!(pc->breakpoints[i] > pc->breakpoints[i - 1])) {
        throw Error(ErrorKind::InvalidArgument, "breakpoints must be strictly increasing");
      }
    }
    for (double v : pc->values) {
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite potential value");
    }
  } else if (const auto* c = std::get_if<CoulombLike>(&family)) {
    if (c->cutoff < 0.0) throw Error(ErrorKind::InvalidArgument, "negative Coulomb cutoff");
  }
}

}  // namespace

Potential1D::Potential1D() : family_(PiecewiseConstant{{}, {0.0}}) {}

Potential1D::Potential1D(PotentialFamily family) : family_(std::move(family)) { validate(family_); }

Potential1D Potential1D::piecewise(std::vector<double> breakpoints, std::vector<double> values) {
  return Potential1D(PiecewiseConstant{std::move(breakpoints), std::move(values)});
}

Potential1D Potential1D::square_well(double v0, double half_width) {
  if (!(half_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "half width must be positive");
  return piecewise({-half_width, half_width}, {0.0, -v0, 0.0});
}

Potential1D Potential1D::linear(double slope) { return Potential1D(Linear{slope, 0.0}); }

Potential1D Potential1D::coulomb_like(double strength, double cutoff) {
  return Potential1D(CoulombLike{strength, cutoff, 0.0});
}

Potential1D Potential1D::lorentzian(double strength) { return Potential1D(Lorentzian{strength, 0.0}); }

Potential1D Potential1D::tanh(double strength) { return Potential1D(Tanh{strength, 0.0}); }

double Potential1D::value(double x) const {
  return std::visit(
      overloaded{
          [x](const PiecewiseConstant& p) {
            // upper_bound: a point sitting on a breakpoint belongs to the region on its right.
            const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), x);
            return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
          },
          [x](const Linear& l) { return l.slope * x + l.intercept; },
          [x](const CoulombLike& c) {
            const double r = std::abs(x - c.center);
            if (c.cutoff > 0.0) return c.strength / std::max(r, c.cutoff);
            if (r == 0.0) throw Error(ErrorKind::SingularPoint, "Coulomb-like potential at its center");
            return c.strength / r;
          },
          [x](const Lorentzian& l) {
            const double u = x - l.center;
            return l.strength / (1.0 + u * u);
          },
          [x](const Tanh& t) { return t.strength * std::tanh(x - t.center); },
      },
      family_);
}

double Potential1D::derivative(double x) const {
  return std::visit(
      overloaded{
          [x](const PiecewiseConstant& p) {
            if (std::binary_search(p.breakpoints.begin(), p.breakpoints.end(), x)) {
              throw Error(ErrorKind::DiscontinuityPoint,
                          "derivative requested at breakpoint x=" + std::to_string(x));
            }
            return 0.0;
          },
          [](const Linear& l) { return l.slope; },
          [x](const CoulombLike& c) {
            const double u = x - c.center;
            const double r = std::abs(u);
            if (c.cutoff > 0.0 && r < c.cutoff) return 0.0;
            if (r == 0.0) throw Error(ErrorKind::SingularPoint, "Coulomb-like potential at its center");
            return -c.strength * std::copysign(1.0, u) / (r * r);
          },
          [x](const Lorentzian& l) {
            const double u = x - l.center;
            const double d = 1.0 + u * u;
            return -2.0 * l.strength * u / (d * d);
          },
          [x](const Tanh& t) {
            const double c = std::cosh(x - t.center);
            return t.strength / (c * c);
          },
      },
      family_);
}

bool Potential1D::is_identically_zero() const noexcept {
  return std::visit(overloaded{
                        [](const PiecewiseConstant& p) {
                          return std::all_of(p.values.begin(), p.values.end(),
                                             [](double v) { return v == 0.0; });
                        },
                        [](const Linear& l) { return l.slope == 0.0 && l.intercept == 0.0; },
                        [](const CoulombLike& c) { return c.strength == 0.0; },
                        [](const Lorentzian& l) { return l.strength == 0.0; },
                        [](const Tanh& t) { return t.strength == 0.0; },
                    },
                    family_);
}

std::vector<double> Potential1D::kinks() const {
  return std::visit(overloaded{
                        [](const PiecewiseConstant& p) { return p.breakpoints; },
                        [](const Linear&) { return std::vector<double>{}; },
                        [](const CoulombLike& c) {
                          if (c.cutoff > 0.0) {
                            return std::vector<double>{c.center - c.cutoff, c.center + c.cutoff};
                          }
                          return std::vector<double>{c.center};
                        },
                        [](const Lorentzian&) { return std::vector<double>{}; },
                        [](const Tanh&) { return std::vector<double>{}; },
                    },
                    family_);
}

std::optional<std::pair<double, double>> Potential1D::asymptotes() const {
  using Result = std::optional<std::pair<double, double>>;
  return std::visit(overloaded{
                        [](const PiecewiseConstant& p) -> Result {
                          return std::pair{p.values.front(), p.values.back()};
                        },
                        [](const Linear& l) -> Result {
                          if (l.slope != 0.0) return std::nullopt;
                          return std::pair{l.intercept, l.intercept};
                        },
                        [](const CoulombLike&) -> Result { return std::pair{0.0, 0.0}; },
                        [](const Lorentzian&) -> Result { return std::pair{0.0, 0.0}; },
                        [](const Tanh& t) -> Result { return std::pair{-t.strength, t.strength}; },
                    },
                    family_);
}

std::pair<double, double> Potential1D::support() const {
  return std::visit(overloaded{
                        [](const PiecewiseConstant& p) {
                          if (p.breakpoints.empty()) return std::pair{-1.0, 1.0};
                          return std::pair{p.breakpoints.front() - 1.0, p.breakpoints.back() + 1.0};
                        },
                        [](const Linear&) { return std::pair{-10.0, 10.0}; },
                        [](const CoulombLike& c) { return std::pair{c.center - 10.0, c.center + 10.0}; },
                        [](const Lorentzian& l) { return std::pair{l.center - 10.0, l.center + 10.0}; },
                        [](const Tanh& t) { return std::pair{t.center - 10.0, t.center + 10.0}; },
                    },
                    family_);
}

Potential1D Potential1D::shifted(double shift) const {
  return std::visit(overloaded{
                        [shift](PiecewiseConstant p) {
                          for (double& b : p.breakpoints) b += shift;
                          return Potential1D(std::move(p));
                        },
                        [shift](Linear l) {
                          l.intercept -= l.slope * shift;
                          return Potential1D(l);
                        },
                        [shift](CoulombLike c) {
                          c.center += shift;
                          return Potential1D(c);
                        },
                        [shift](Lorentzian l) {
                          l.center += shift;
                          return Potential1D(l);
                        },
                        [shift](Tanh t) {
                          t.center += shift;
                          return Potential1D(t);
                        },
                    },
                    family_);
}

void to_json(nlohmann::json& j, const Potential1D& pot) {
  std::visit(overloaded{
                 [&j](const PiecewiseConstant& p) {
                   j = {{"family", "piecewise_constant"},
                        {"breakpoints", p.breakpoints},
                        {"values", p.values}};
                 },
                 [&j](const Linear& l) {
                   j = {{"family", "linear"}, {"slope", l.slope}};
                   if (l.intercept != 0.0) j["intercept"] = l.intercept;
                 },
                 [&j](const CoulombLike& c) {
                   j = {{"family", "coulomb_like"}, {"strength", c.strength}};
                   if (c.cutoff != 0.0) j["cutoff"] = c.cutoff;
                   if (c.center != 0.0) j["center"] = c.center;
                 },
                 [&j](const Lorentzian& l) {
                   j = {{"family", "lorentzian"}, {"strength", l.strength}};
                   if (l.center != 0.0) j["center"] = l.center;
                 },
                 [&j](const Tanh& t) {
                   j = {{"family", "tanh"}, {"strength", t.strength}};
                   if (t.center != 0.0) j["center"] = t.center;
                 },
             },
             pot.family());
}

void from_json(const nlohmann::json& j, Potential1D& pot) {
  try {
    const auto family = j.at("family").get<std::string>();
    if (family == "piecewise_constant") {
      pot = Potential1D::piecewise(j.at("breakpoints").get<std::vector<double>>(),
                                   j.at("values").get<std::vector<double>>());
    } else if (family == "linear") {
      pot = Potential1D(Linear{j.at("slope").get<double>(), j.value("intercept", 0.0)});
    } else if (family == "coulomb_like") {
      pot = Potential1D(CoulombLike{j.at("strength").get<double>(), j.value("cutoff", 0.0),
                                    j.value("center", 0.0)});
    } else if (family == "lorentzian") {
      pot = Potential1D(Lorentzian{j.at("strength").get<double>(), j.value("center", 0.0)});
    } else if (family == "tanh") {
      pot = Potential1D(Tanh{j.at("strength").get<double>(), j.value("center", 0.0)});
    } else {
      throw Error(ErrorKind::ConfigError, "unknown potential family '" + family + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed potential JSON: ") + e.what());
  }
}

}  // namespace dirac
