#include "fracam/dynamics.h"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "fracam/errors.h"

namespace fracam {

namespace {

constexpr std::array<Var, 4> kPhaseVars{Var::X1, Var::X2, Var::P1, Var::P2};

PhasePoint advance(const PhasePoint& s, const std::array<double, 4>& d, double h) {
  return {{s.x[0] + h * d[0], s.x[1] + h * d[1]}, {s.p[0] + h * d[2], s.p[1] + h * d[3]}};
}

double max_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double ref = series.front();
  const double scale = ref != 0.0 ? std::abs(ref) : 1.0;
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - ref) / scale);
  return worst;
}

std::array<double, 2> eval_pair(const PlanarVector& v, const PhasePoint& pt) {
  return {evaluate(v[0], pt), evaluate(v[1], pt)};
}

}  // namespace

VectorField::VectorField(const HamiltonianSystem& system) {
  const PhaseExpression& h = system.hamiltonian;
  m_exact = {partial_derivative(h, Var::P1), partial_derivative(h, Var::P2),
             -partial_derivative(h, Var::X1), -partial_derivative(h, Var::X2)};
  for (std::size_t i = 0; i < 4; ++i) {
    m_exact[i] = normalize_radial(m_exact[i]);
    m_numeric[i] = NumericExpression(m_exact[i]);
  }
  m_singular = h.singular_at_origin();
}

std::array<double, 4> VectorField::operator()(const PhasePoint& pt) const {
  return {m_numeric[0](pt), m_numeric[1](pt), m_numeric[2](pt), m_numeric[3](pt)};
}

VectorField equations_of_motion(const HamiltonianSystem& system) {
  if (system.mode != ReductionMode::Full) {
    throw ModeError("equations of motion are only defined for the full model");
  }
  return VectorField(system);
}

PhasePoint rk4_step(const VectorField& field, const PhasePoint& state, double h) {
  const auto k1 = field(state);
  const auto k2 = field(advance(state, k1, h / 2));
  const auto k3 = field(advance(state, k2, h / 2));
  const auto k4 = field(advance(state, k3, h));
  std::array<double, 4> slope{};
  for (std::size_t i = 0; i < 4; ++i) {
    slope[i] = (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) / 6;
  }
  return advance(state, slope, h);
}

double Trajectory::max_relative_drift_J() const { return max_drift(J); }
double Trajectory::max_relative_drift_H() const { return max_drift(H); }

Trajectory integrate(const HamiltonianSystem& system, const PhasePoint& initial, double dt, int steps,
                     const IntegrationOptions& options) {
  if (!(dt > 0)) throw ConfigError("time step must be positive");
  if (steps < 0) throw ConfigError("step count must be nonnegative");
  const VectorField field = equations_of_motion(system);
  const NumericExpression j(canonical_angular_momentum());
  const NumericExpression h(system.hamiltonian);
  const PlanarVector pi = kinetic_momenta(system.selection, system.config);
  const NumericExpression phi1(pi[0]);
  const NumericExpression phi2(pi[1]);

  Trajectory traj;
  const auto reserve = static_cast<std::size_t>(steps) + 1;
  traj.times.reserve(reserve);
  traj.states.reserve(reserve);
  traj.J.reserve(reserve);
  traj.H.reserve(reserve);
  traj.phi1.reserve(reserve);
  traj.phi2.reserve(reserve);

  PhasePoint state = initial;
  for (int step = 0; step <= steps; ++step) {
    const double r = std::hypot(state.x[0], state.x[1]);
    if (field.singular_at_origin() && r < options.r_min) {
      throw OriginApproach("trajectory reached r = " + std::to_string(r) + " < r_min at t = " +
                           std::to_string(step * dt));
    }
    traj.times.push_back(step * dt);
    traj.states.push_back(state);
    traj.J.push_back(j(state));
    traj.H.push_back(h(state));
    traj.phi1.push_back(phi1(state));
    traj.phi2.push_back(phi2(state));
    if (step < steps) state = rk4_step(field, state, dt);
  }
  return traj;
}

PhasePoint on_constraint_surface(const ModelConfig& config, FieldSelection selection,
                                 const std::array<double, 2>& x) {
  PhasePoint pt{{x[0], x[1]}, {0.0, 0.0}};
  const auto a = eval_pair(effective_gauge_potential(selection, config), pt);
  pt.p = {-config.B * a[0], -config.B * a[1]};
  return pt;
}

PhasePoint circular_state(const HamiltonianSystem& system, double radius, double omega) {
  PhasePoint pt{{radius, 0.0}, {0.0, 0.0}};
  const auto a = eval_pair(effective_gauge_potential(system.selection, system.config), pt);
  const double mass = system.config.effective_mass();
  const std::array<double, 2> velocity{0.0, radius * omega};
  pt.p = {mass * velocity[0] - system.config.B * a[0], mass * velocity[1] - system.config.B * a[1]};
  return pt;
}

double radial_acceleration_residual(const VectorField& field, const PhasePoint& pt) {
  const auto rate = field(pt);
  const auto& exact = field.components();
  std::array<double, 2> accel{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      accel[i] += evaluate(partial_derivative(exact[i], kPhaseVars[k]), pt) * rate[k];
    }
  }
  const double r = std::hypot(pt.x[0], pt.x[1]);
  const double omega = (pt.x[0] * rate[1] - pt.x[1] * rate[0]) / (r * r);
  const double radial = (accel[0] * pt.x[0] + accel[1] * pt.x[1]) / r;
  return radial + r * omega * omega;
}

std::optional<CircularOrbit> find_circular_orbit(const HamiltonianSystem& system, double omega) {
  const VectorField field = equations_of_motion(system);
  const auto residual = [&](double r) {
    return radial_acceleration_residual(field, circular_state(system, r, omega));
  };
  constexpr int kScan = 400;
  double lo = 1e-2;
  double f_lo = residual(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double hi = 1e-2 * std::pow(1e4, static_cast<double>(i) / kScan);
    const double f_hi = residual(hi);
    if (f_lo == 0.0 || std::signbit(f_lo) != std::signbit(f_hi)) {
      std::uintmax_t max_iter = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(
          residual, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
      CircularOrbit orbit;
      orbit.radius = 0.5 * (a + b);
      orbit.state = circular_state(system, orbit.radius, omega);
      orbit.residual = residual(orbit.radius);
      return orbit;
    }
    lo = hi;
    f_lo = f_hi;
  }
  return std::nullopt;
}

ReductionReport reduction_probe(const std::vector<ModelConfig>& configs, FieldSelection selection,
                                const std::array<double, 2>& x0, double dt, int steps) {
  ReductionReport report;
  if (configs.empty()) return report;
  const ModelConfig& ref = configs.front();
  for (const auto& c : configs) {
    if (c.alpha != ref.alpha || c.B != ref.B || c.k != ref.k || c.rho != ref.rho || c.K != ref.K ||
        c.hbar != ref.hbar) {
      throw ConfigError("reduction probe configs may differ only in the bare mass m");
    }
  }
  if (ref.alpha * ref.B == 0.0) {
    report.applicable = false;
    report.residual_nonincreasing = false;
    report.note = "N/A: alpha*B = 0, no velocity coupling and no constraint surface";
    return report;
  }

  for (const auto& config : configs) {
    const HamiltonianSystem system = build_model(config, selection, ReductionMode::Full);
    const PlanarVector field = electric_field(selection, config);
    const Trajectory traj = integrate(system, on_constraint_surface(config, selection, x0), dt, steps);

    ReductionRow row;
    row.m = config.m;
    row.effective_mass = config.effective_mass();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const PhasePoint& s = traj.states[i];
      row.max_constraint_residual =
          std::max({row.max_constraint_residual, std::abs(traj.phi1[i]), std::abs(traj.phi2[i])});
      const auto e = eval_pair(field, s);
      const double reduced_j = config.alpha * config.B * (s.x[0] * e[0] + s.x[1] * e[1]);
      row.max_J_deviation = std::max(row.max_J_deviation, std::abs(traj.J[i] - reduced_j));
    }
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].max_constraint_residual >
        report.rows[i - 1].max_constraint_residual * (1 + 1e-12)) {
      report.residual_nonincreasing = false;
    }
  }
  report.note = report.residual_nonincreasing ? "constraint residual nonincreasing along the sweep"
                                              : "constraint residual NOT monotone along the sweep";
  return report;
}

}  // namespace fracam
