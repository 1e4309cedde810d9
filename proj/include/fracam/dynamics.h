#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fracam/expr.h"
#include "fracam/models.h"

namespace fracam {

// Hamilton's equations xdot_i = {x_i, H}, pdot_i = {p_i, H}.
class VectorField {
 public:
  explicit VectorField(const HamiltonianSystem& system);

  // (xdot1, xdot2, pdot1, pdot2)
  std::array<double, 4> operator()(const PhasePoint& pt) const;

  const std::array<PhaseExpression, 4>& components() const { return m_exact; }
  bool singular_at_origin() const { return m_singular; }

 private:
  std::array<PhaseExpression, 4> m_exact;
  std::array<NumericExpression, 4> m_numeric;
  bool m_singular = false;
};

// Throws ModeError for reduced systems.
VectorField equations_of_motion(const HamiltonianSystem& system);

PhasePoint rk4_step(const VectorField& field, const PhasePoint& state, double h);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<double> J;
  std::vector<double> H;
  std::vector<double> phi1;
  std::vector<double> phi2;

  // max |q(t) - q(0)| / |q(0)| (absolute if q(0) == 0)
  double max_relative_drift_J() const;
  double max_relative_drift_H() const;
};

struct IntegrationOptions {
  double r_min = 1e-3;
};

// Fixed-step classical RK4 with J, H and phi_i = p_i + alpha B eps_ij E_j
// logged at every step. Throws OriginApproach if r < r_min while the
// Hamiltonian is singular at the origin.
Trajectory integrate(const HamiltonianSystem& system, const PhasePoint& initial, double dt, int steps,
                     const IntegrationOptions& options = {});

// Phase point whose velocity is zero: p_i = -alpha B eps_ij E_j(x).
PhasePoint on_constraint_surface(const ModelConfig& config, FieldSelection selection,
                                 const std::array<double, 2>& x);

// Phase point at (r, 0) moving tangentially with angular velocity omega.
PhasePoint circular_state(const HamiltonianSystem& system, double radius, double omega);

// xddot . e_r + r omega^2 along the circular motion through `pt`, computed
// from exact derivatives of the vector field.
double radial_acceleration_residual(const VectorField& field, const PhasePoint& pt);

struct CircularOrbit {
  double radius = 0.0;
  PhasePoint state;
  double residual = 0.0;
};

// Root-finds the radius where the radial force balance holds for the given
// angular velocity. Returns nullopt if no sign change in [1e-2, 1e2].
std::optional<CircularOrbit> find_circular_orbit(const HamiltonianSystem& system, double omega);

struct ReductionRow {
  double m = 0.0;
  double effective_mass = 0.0;
  double max_constraint_residual = 0.0;
  double max_J_deviation = 0.0;  // |J(t) - alpha B (k + rho r^2 / 2)|
};

struct ReductionReport {
  bool applicable = true;  // false when alpha B = 0 (no constraint to probe)
  std::vector<ReductionRow> rows;
  bool residual_nonincreasing = true;
  std::string note;
};

// Integrates each config from the on-surface point above `x0` and reports
// how far the full dynamics strays from the reduced constraint surface.
// Configs must share alpha, B, k, rho, K, hbar.
ReductionReport reduction_probe(const std::vector<ModelConfig>& configs, FieldSelection selection,
                                const std::array<double, 2>& x0, double dt, int steps);

}  // namespace fracam
