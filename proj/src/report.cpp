#include "fracam/report.h"

#include <charconv>
#include <cmath>

namespace fracam {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["config"] = {{"m", m.config.m},         {"alpha", m.config.alpha}, {"B", m.config.B},
                 {"k", m.config.k},         {"rho", m.config.rho},     {"K", m.config.K},
                 {"hbar", m.config.hbar}};
  j["selection"] = std::string(to_string(m.selection));
  j["mode"] = std::string(to_string(m.mode));
  j["N"] = m.N;
  j["trusted_fraction"] = m.trusted_fraction;
  j["dt"] = m.dt;
  j["steps"] = m.steps;
  j["seed"] = m.seed;
  j["x0"] = m.x0;
  j["p0"] = m.p0;
  if (!m.m_sweep.empty()) j["m_sweep"] = m.m_sweep;
  return j;
}

nlohmann::ordered_json analysis_to_json(const ConstraintAnalysis& a, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest_to_json(manifest);
  j["hamiltonian"] = a.system.hamiltonian.to_string();

  auto& constraints = j["constraints"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const auto& c = a.constraints[i];
    constraints.push_back({{"label", c.label},
                           {"generation", c.generation},
                           {"expr", c.expr.to_string()},
                           {"class", a.classification.labels[i] == ConstraintClass::First ? "first"
                                                                                           : "second"}});
  }

  auto& matrix = j["matrix"] = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < a.matrix.size(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < a.matrix.size(); ++c) row.push_back(a.matrix(r, c).to_string());
    matrix.push_back(std::move(row));
  }

  j["classification"] = {{"first", a.classification.first_count},
                         {"second", a.classification.second_count},
                         {"ranks", a.classification.ranks},
                         {"determinants", a.classification.determinants}};
  j["dof"] = a.classification.dof;

  auto& brackets = j["dirac_brackets"] = nlohmann::ordered_json::object();
  for (const auto& [pair, expr] : a.dirac_brackets) {
    brackets[std::string(var_name(pair.first)) + "," + std::string(var_name(pair.second))] =
        expr.to_string();
  }

  if (!a.dirac_brackets.empty()) {
    const QuantizedBrackets q = quantize_brackets(a);
    j["theta"] = *q.theta;
  } else {
    j["theta"] = nullptr;
  }
  return j;
}

SpectrumTable fam_table(const SpectrumResult& result, const ModelConfig& config,
                        FieldSelection selection) {
  SpectrumTable table;
  const auto values = result.trusted();
  for (std::size_t n = 0; n < values.size(); ++n) {
    const double formula = fam_formula(config, selection, static_cast<int>(n));
    const double err = std::abs(values[n] - formula);
    table.rows.push_back({static_cast<int>(n), values[n], formula, err});
    table.max_abs_error = std::max(table.max_abs_error, err);
  }
  return table;
}

SpectrumTable full_model_table(const SpectrumResult& result, double hbar) {
  SpectrumTable table;
  const int offset = result.truncation_dim / 2;
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
    const int n = static_cast<int>(i) - offset;
    const double formula = n * hbar;
    const double err = std::abs(result.eigenvalues[i] - formula);
    table.rows.push_back({n, result.eigenvalues[i], formula, err});
    table.max_abs_error = std::max(table.max_abs_error, err);
  }
  return table;
}

void write_spectrum_csv(std::ostream& os, const SpectrumTable& table, const RunManifest& manifest) {
  os << "# manifest: " << manifest_to_json(manifest).dump() << "\n";
  os << "n,eigenvalue,formulaValue,absError\n";
  for (const auto& row : table.rows) {
    os << row.n << ',' << format_double(row.eigenvalue) << ',' << format_double(row.formula) << ','
       << format_double(row.abs_error) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const RunManifest& manifest) {
  os << "# manifest: " << manifest_to_json(manifest).dump() << "\n";
  os << "t,x1,x2,p1,p2,J,H,phi1,phi2\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    os << format_double(traj.times[i]) << ',' << format_double(s.x[0]) << ','
       << format_double(s.x[1]) << ',' << format_double(s.p[0]) << ',' << format_double(s.p[1])
       << ',' << format_double(traj.J[i]) << ',' << format_double(traj.H[i]) << ','
       << format_double(traj.phi1[i]) << ',' << format_double(traj.phi2[i]) << '\n';
  }
}

nlohmann::ordered_json reduction_to_json(const ReductionReport& report, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest_to_json(manifest);
  j["applicable"] = report.applicable;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"m", r.m},
                    {"M", r.effective_mass},
                    {"max_constraint_residual", r.max_constraint_residual},
                    {"max_J_deviation", r.max_J_deviation}});
  }
  j["residual_nonincreasing"] = report.residual_nonincreasing;
  j["note"] = report.note;
  return j;
}

}  // namespace fracam
