#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "fracam/expr.h"

namespace fracam {

// Physical parameters of a polarizable atom in a uniform magnetic field B,
// a filament field k/r and a uniform-charge field (rho/2) r, in a harmonic
// trap of stiffness K. The induced dipole d = alpha (E + v x B) is only used
// in deriving the Hamiltonian and is not stored.
struct ModelConfig {
  double m = 1.0;
  double alpha = 1.0;
  double B = 1.0;
  double k = 0.5;
  double rho = 1.0;
  double K = 1.0;
  double hbar = 1.0;

  // M = m + alpha B^2
  double effective_mass() const { return m + alpha * B * B; }
  // hbar / (alpha rho B); infinite when alpha rho B = 0.
  double theta() const { return hbar / (alpha * rho * B); }

  // Throws ConfigError on m <= 0, alpha <= 0, K <= 0, hbar <= 0, M <= 0 or
  // non-finite values.
  void validate() const;
};

enum class FieldSelection { Both, E1Only, E2Only };
enum class ReductionMode { Full, Reduced };

std::string_view to_string(FieldSelection s);
std::string_view to_string(ReductionMode m);
// Accepts "both", "e1", "e2" (and the enum spellings); throws ConfigError.
FieldSelection parse_selection(std::string_view text);
ReductionMode parse_mode(std::string_view text);

bool has_uniform_field(FieldSelection s);
bool has_filament_field(FieldSelection s);

using PlanarVector = std::array<PhaseExpression, 2>;

struct HamiltonianSystem {
  ModelConfig config;
  FieldSelection selection = FieldSelection::Both;
  ReductionMode mode = ReductionMode::Full;
  PhaseExpression hamiltonian;
  // p_i + alpha B eps_ij E_j; empty in Full mode.
  std::vector<PhaseExpression> primary_constraints;
};

// Cartesian components E_i = k x_i / r^2 (filament) + (rho/2) x_i (uniform).
PlanarVector electric_field(FieldSelection selection, const ModelConfig& config);

// eps_ij v_j with eps_12 = +1.
PlanarVector rotate_minus_quarter(const PlanarVector& v);

// Full: H = (p_i + alpha B eps_ij E_j)^2 / 2M - alpha E^2/2 + K x^2/2.
// Reduced: H_r = -alpha E^2/2 + K x^2/2 with primary constraints
// phi_i = p_i + alpha B eps_ij E_j.
HamiltonianSystem build_model(const ModelConfig& config, FieldSelection selection,
                              ReductionMode mode);

// Minimal-coupling form of the constraints (p_i + alpha B eps_ij E_j) for
// any mode; in Full mode these are M xdot_i.
PlanarVector kinetic_momenta(FieldSelection selection, const ModelConfig& config);

// J = x1 p2 - x2 p1
PhaseExpression canonical_angular_momentum();

// Substitutes p_i = -alpha B eps_ij E_j. Throws ModeError in Full mode.
PhaseExpression reduce_on_constraint_surface(const HamiltonianSystem& system,
                                             const PhaseExpression& f);
PhaseExpression reduce_J_on_constraint_surface(const HamiltonianSystem& system);

// A_i = alpha eps_ij E_j, so that phi_i = p_i + B A_i.
PlanarVector effective_gauge_potential(FieldSelection selection, const ModelConfig& config);

}  // namespace fracam
