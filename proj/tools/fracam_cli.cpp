#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "fracam/acceptance.h"
#include "fracam/constraints.h"
#include "fracam/dynamics.h"
#include "fracam/errors.h"
#include "fracam/manifest.h"
#include "fracam/quantum.h"
#include "fracam/report.h"

using namespace fracam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
  std::string config_path;
  std::optional<double> m, alpha, B, k, rho, K, hbar;
  std::optional<std::string> selection, mode;
  std::optional<int> N, steps;
  std::optional<double> dt, trusted_fraction;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> x0, p0;
  std::string out;
  std::vector<double> m_sweep;
  double perturb_theta = 0.0;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON or key = value config file");
  cmd->add_option("--selection", o.selection, "field selection: both | e1 | e2");
  cmd->add_option("--mode", o.mode, "reduction mode: full | reduced");
  cmd->add_option("--m", o.m, "bare mass");
  cmd->add_option("--alpha", o.alpha, "polarizability");
  cmd->add_option("--B", o.B, "magnetic field");
  cmd->add_option("--k", o.k, "filament field strength");
  cmd->add_option("--rho", o.rho, "uniform charge density");
  cmd->add_option("--K", o.K, "trap stiffness");
  cmd->add_option("--hbar", o.hbar, "reduced Planck constant");
  cmd->add_option("--N", o.N, "truncation dimension / angular grid size");
  cmd->add_option("--trusted-fraction", o.trusted_fraction, "fraction of levels to certify");
  cmd->add_option("--dt", o.dt, "time step");
  cmd->add_option("--steps", o.steps, "number of RK4 steps");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--x0", o.x0, "initial position x1,x2")->delimiter(',')->expected(2);
  cmd->add_option("--p0", o.p0, "initial momentum p1,p2")->delimiter(',')->expected(2);
  cmd->add_option("--out", o.out, "output path (default stdout)");
}

RunManifest build_manifest(const Overrides& o, ReductionMode default_mode) {
  RunManifest m;
  m.mode = default_mode;
  if (!o.config_path.empty()) apply_config_file(o.config_path, m);
  if (o.m) m.config.m = *o.m;
  if (o.alpha) m.config.alpha = *o.alpha;
  if (o.B) m.config.B = *o.B;
  if (o.k) m.config.k = *o.k;
  if (o.rho) m.config.rho = *o.rho;
  if (o.K) m.config.K = *o.K;
  if (o.hbar) m.config.hbar = *o.hbar;
  if (o.selection) m.selection = parse_selection(*o.selection);
  if (o.mode) m.mode = parse_mode(*o.mode);
  if (o.N) m.N = *o.N;
  if (o.trusted_fraction) m.trusted_fraction = *o.trusted_fraction;
  if (o.dt) m.dt = *o.dt;
  if (o.steps) m.steps = *o.steps;
  if (o.seed) m.seed = *o.seed;
  if (o.x0) m.x0 = {(*o.x0)[0], (*o.x0)[1]};
  if (o.p0) m.p0 = {(*o.p0)[0], (*o.p0)[1]};
  m.out = o.out;
  m.m_sweep = o.m_sweep;
  m.validate();
  return m;
}

void emit(const RunManifest& m, const std::string& text) {
  if (m.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(m.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + m.out + "'");
  file << text;
}

int cmd_analyze(const RunManifest& m) {
  if (m.mode != ReductionMode::Reduced) {
    throw ModeError("analyze requires --mode reduced");
  }
  AnalysisOptions opts;
  opts.seed = m.seed;
  const auto analysis = analyze(build_model(m.config, m.selection, m.mode), opts);
  emit(m, analysis_to_json(analysis, m).dump(2) + "\n");
  return kExitOk;
}

int cmd_spectrum(const RunManifest& m) {
  std::ostringstream os;
  SpectrumTable table;
  if (m.mode == ReductionMode::Full) {
    table = full_model_table(full_model_angular_spectrum(m.N, m.config.hbar), m.config.hbar);
  } else {
    if (m.selection == FieldSelection::E1Only) {
      std::cerr << "warning: E1-only reduced model has dof = 0; the angular momentum is the "
                   "constant alpha*B*k\n";
    }
    build_model(m.config, m.selection, m.mode);  // validates alpha*rho*B != 0 where needed
    table = fam_table(fam_spectrum(m.config, m.selection, m.N, m.trusted_fraction), m.config,
                      m.selection);
  }
  write_spectrum_csv(os, table, m);
  emit(m, os.str());
  std::cerr << table.rows.size() << " trusted rows, max absError " << format_double(table.max_abs_error)
            << "\n";
  return table.max_abs_error > 1e-6 ? kExitVerification : kExitOk;
}

int cmd_evolve(const RunManifest& m) {
  if (m.mode != ReductionMode::Full) {
    throw ModeError("evolve integrates the full model; use --mode full");
  }
  if (!m.m_sweep.empty()) {
    std::vector<ModelConfig> configs;
    for (double mass : m.m_sweep) {
      ModelConfig c = m.config;
      c.m = mass;
      configs.push_back(c);
    }
    const auto report = reduction_probe(configs, m.selection, m.x0, m.dt, m.steps);
    emit(m, reduction_to_json(report, m).dump(2) + "\n");
    std::cerr << report.note << "\n";
    return kExitOk;
  }

  const auto system = build_model(m.config, m.selection, m.mode);
  const PhasePoint initial{m.x0, m.p0};
  const Trajectory traj = integrate(system, initial, m.dt, m.steps);
  std::ostringstream os;
  write_trajectory_csv(os, traj, m);
  emit(m, os.str());
  std::cerr << "max relative drift: J " << format_double(traj.max_relative_drift_J()) << ", H "
            << format_double(traj.max_relative_drift_H()) << "\n";

  const bool decoupled = m.config.B == 0 && m.config.k == 0 && m.config.rho == 0;
  if (decoupled) {
    const double period = 2 * M_PI * std::sqrt(m.config.m / m.config.K);
    const int steps = static_cast<int>(std::ceil(period / m.dt));
    const Trajectory one = integrate(system, initial, period / steps, steps);
    const auto& end = one.states.back();
    const double miss = std::hypot(std::hypot(end.x[0] - initial.x[0], end.x[1] - initial.x[1]),
                                   std::hypot(end.p[0] - initial.p[0], end.p[1] - initial.p[1]));
    std::cerr << "oscillator period 2*pi*sqrt(m/K) = " << format_double(period)
              << ", return error " << format_double(miss) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const RunManifest& m, double perturb_theta) {
  AcceptanceOptions opts;
  opts.seed = m.seed;
  opts.theta_perturbation = perturb_theta;
  const auto results = run_acceptance(opts);
  emit(m, format_acceptance_table(results));
  bool ok = true;
  for (const auto& r : results) {
    std::cerr << "criterion " << r.id << ": " << format_double(r.seconds) << " s (limit "
              << format_double(r.limit_seconds) << " s)\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint analysis and fractional angular-momentum spectra for a polarizable "
               "atom in crossed fields"};
  app.require_subcommand(1);

  Overrides analyze_o, spectrum_o, evolve_o, verify_o;
  auto* analyze_cmd = app.add_subcommand("analyze", "Dirac-Bergmann analysis of a reduced model (JSON)");
  add_common_options(analyze_cmd, analyze_o);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "angular-momentum spectrum vs closed form (CSV)");
  add_common_options(spectrum_cmd, spectrum_o);
  auto* evolve_cmd = app.add_subcommand("evolve", "RK4 trajectory of the full model (CSV)");
  add_common_options(evolve_cmd, evolve_o);
  evolve_cmd->add_option("--m-sweep", evolve_o.m_sweep, "bare masses for the reduction probe")
      ->delimiter(',');
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
  add_common_options(verify_cmd, verify_o);
  verify_cmd->add_option("--perturb-theta", verify_o.perturb_theta,
                         "relative theta error to inject (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(build_manifest(analyze_o, ReductionMode::Reduced));
    if (*spectrum_cmd) return cmd_spectrum(build_manifest(spectrum_o, ReductionMode::Reduced));
    if (*evolve_cmd) return cmd_evolve(build_manifest(evolve_o, ReductionMode::Full));
    if (*verify_cmd) {
      return cmd_verify(build_manifest(verify_o, ReductionMode::Reduced), verify_o.perturb_theta);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Usage ? kExitUsage : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
