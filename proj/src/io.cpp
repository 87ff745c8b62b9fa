#include "dirac/io.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace dirac::io {

namespace {

struct Row {
  double param;
  int branch;
  double epsilon;
};

std::vector<Row> sorted_rows(const std::vector<SpectrumBranch>& branches) {
  std::vector<Row> rows;
  for (const auto& b : branches) {
    for (const auto& [p, e] : b.samples) rows.push_back({p, b.index, e});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return std::tie(a.param, a.branch) < std::tie(b.param, b.branch); });
  return rows;
}

std::vector<const SpectrumBranch*> terminated(const std::vector<SpectrumBranch>& branches) {
  std::vector<const SpectrumBranch*> out;
  for (const auto& b : branches) {
    if (b.termination) out.push_back(&b);
  }
  std::sort(out.begin(), out.end(), [](const SpectrumBranch* a, const SpectrumBranch* b) {
    return std::tie(a->termination->param, a->index) < std::tie(b->termination->param, b->index);
  });
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const std::vector<double>& energies) {
  out << "level,epsilon\n";
  for (std::size_t i = 0; i < energies.size(); ++i) out << i << ',' << format_number(energies[i]) << '\n';
}

nlohmann::json spectrum_json(double k, double v0, double half_width, const std::vector<double>& energies) {
  return {{"k", k}, {"v0", v0}, {"L", half_width}, {"levels", energies}};
}

void write_sweep_csv(std::ostream& out, const std::vector<SpectrumBranch>& branches) {
  out << "param,branch,epsilon\n";
  for (const auto& r : sorted_rows(branches)) {
    out << format_number(r.param) << ',' << r.branch << ',' << format_number(r.epsilon) << '\n';
  }
}

void write_terminations_csv(std::ostream& out, const std::vector<SpectrumBranch>& branches) {
  out << "param,branch,epsilon,termination\n";
  for (const auto* b : terminated(branches)) {
    const auto& t = *b->termination;
    out << format_number(t.param) << ',' << b->index << ',' << format_number(t.epsilon) << ','
        << to_string(t.edge) << '\n';
  }
}

nlohmann::json sweep_json(const std::vector<SpectrumBranch>& branches) {
  nlohmann::json out;
  out["parameter"] = branches.empty() ? "" : branches.front().parameter;
  out["branches"] = nlohmann::json::array();
  for (const auto& b : branches) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [p, e] : b.samples) samples.push_back({{"param", p}, {"epsilon", e}});
    out["branches"].push_back({{"branch", b.index}, {"samples", samples}});
  }
  out["terminations"] = nlohmann::json::array();
  for (const auto* b : terminated(branches)) {
    const auto& t = *b->termination;
    out["terminations"].push_back({{"param", t.param},
                                   {"branch", b->index},
                                   {"epsilon", t.epsilon},
                                   {"termination", to_string(t.edge)},
                                   {"distance", t.distance}});
  }
  return out;
}

void write_state_csv(std::ostream& out, const PiecewiseState& state) {
  const auto density = probability_density(state);
  out << "x,re_psi1,im_psi1,re_psi2,im_psi2,rho,jy\n";
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    out << format_number(state.grid[i]) << ',' << format_number(state.psi1[i].real()) << ','
        << format_number(state.psi1[i].imag()) << ',' << format_number(state.psi2[i].real()) << ','
        << format_number(state.psi2[i].imag()) << ',' << format_number(density.rho[i]) << ','
        << format_number(density.jy[i]) << '\n';
  }
}

nlohmann::json state_json(const PiecewiseState& state, const StateMetadata& meta) {
  const auto density = probability_density(state);
  nlohmann::json out;
  out["k"] = state.label.k;
  out["epsilon"] = state.label.epsilon;
  out["v0"] = meta.v0;
  out["L"] = meta.half_width;
  out["norm"] = state.norm;
  out["pt_eigenvalue"] = {meta.pt_eigenvalue.real(), meta.pt_eigenvalue.imag()};
  std::vector<double> re1, im1, re2, im2;
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    re1.push_back(state.psi1[i].real());
    im1.push_back(state.psi1[i].imag());
    re2.push_back(state.psi2[i].real());
    im2.push_back(state.psi2[i].imag());
  }
  out["x"] = state.grid;
  out["re_psi1"] = re1;
  out["im_psi1"] = im1;
  out["re_psi2"] = re2;
  out["im_psi2"] = im2;
  out["rho"] = density.rho;
  out["jy"] = density.jy;
  return out;
}

void write_landau_csv(std::ostream& out, const std::vector<LevelPair>& levels) {
  out << "n,epsilon_plus,epsilon_minus\n";
  for (std::size_t n = 0; n < levels.size(); ++n) {
    out << n << ',' << format_number(levels[n].plus) << ',' << format_number(levels[n].minus) << '\n';
  }
}

nlohmann::json landau_json(const std::vector<LevelPair>& levels) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t n = 0; n < levels.size(); ++n) {
    out.push_back({{"n", n}, {"epsilon_plus", levels[n].plus}, {"epsilon_minus", levels[n].minus}});
  }
  return out;
}

}  // namespace dirac::io
