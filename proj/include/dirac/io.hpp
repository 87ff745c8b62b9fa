#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirac/spectrum.hpp"
#include "dirac/states.hpp"

namespace dirac::io {

/// Decimal form used by every CSV writer (%.12g).
std::string format_number(double value);

void write_spectrum_csv(std::ostream& out, const std::vector<double>& energies);
nlohmann::json spectrum_json(double k, double v0, double half_width, const std::vector<double>& energies);

/// Branch samples ordered by parameter then branch index.
void write_sweep_csv(std::ostream& out, const std::vector<SpectrumBranch>& branches);
void write_terminations_csv(std::ostream& out, const std::vector<SpectrumBranch>& branches);
nlohmann::json sweep_json(const std::vector<SpectrumBranch>& branches);

struct StateMetadata {
  double v0 = 0.0;
  double half_width = 1.0;
  std::complex<double> pt_eigenvalue;
};

void write_state_csv(std::ostream& out, const PiecewiseState& state);
nlohmann::json state_json(const PiecewiseState& state, const StateMetadata& meta);

void write_landau_csv(std::ostream& out, const std::vector<LevelPair>& levels);
nlohmann::json landau_json(const std::vector<LevelPair>& levels);

}  // namespace dirac::io
