#include "fracam/models.h"

#include <cmath>

#include "fracam/errors.h"

namespace fracam {

void ModelConfig::validate() const {
  for (double v : {m, alpha, B, k, rho, K, hbar}) {
    if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
  }
  if (m <= 0) throw ConfigError("bare mass m must be positive");
  if (alpha <= 0) throw ConfigError("polarizability alpha must be positive");
  if (K <= 0) throw ConfigError("trap stiffness K must be positive");
  if (hbar <= 0) throw ConfigError("hbar must be positive");
  if (effective_mass() <= 0) throw ConfigError("effective mass m + alpha B^2 must be positive");
}

std::string_view to_string(FieldSelection s) {
  switch (s) {
    case FieldSelection::Both: return "both";
    case FieldSelection::E1Only: return "e1";
    case FieldSelection::E2Only: return "e2";
  }
  return "?";
}

std::string_view to_string(ReductionMode m) {
  return m == ReductionMode::Full ? "full" : "reduced";
}

FieldSelection parse_selection(std::string_view text) {
  if (text == "both" || text == "Both") return FieldSelection::Both;
  if (text == "e1" || text == "E1Only") return FieldSelection::E1Only;
  if (text == "e2" || text == "E2Only") return FieldSelection::E2Only;
  throw ConfigError("unknown field selection '" + std::string(text) + "' (expected both|e1|e2)");
}

ReductionMode parse_mode(std::string_view text) {
  if (text == "full" || text == "Full") return ReductionMode::Full;
  if (text == "reduced" || text == "Reduced") return ReductionMode::Reduced;
  throw ConfigError("unknown reduction mode '" + std::string(text) + "' (expected full|reduced)");
}

bool has_uniform_field(FieldSelection s) { return s != FieldSelection::E1Only; }
bool has_filament_field(FieldSelection s) { return s != FieldSelection::E2Only; }

PlanarVector electric_field(FieldSelection selection, const ModelConfig& config) {
  using E = PhaseExpression;
  const E x1 = E::variable(Var::X1);
  const E x2 = E::variable(Var::X2);
  PlanarVector field{};
  if (has_filament_field(selection)) {
    const Rational k = to_rational(config.k);
    field[0] += E(k) * x1 * E::radial(-1);
    field[1] += E(k) * x2 * E::radial(-1);
  }
  if (has_uniform_field(selection)) {
    const Rational half_rho = to_rational(config.rho) / 2;
    field[0] += E(half_rho) * x1;
    field[1] += E(half_rho) * x2;
  }
  return field;
}

PlanarVector rotate_minus_quarter(const PlanarVector& v) { return {v[1], -v[0]}; }

PlanarVector effective_gauge_potential(FieldSelection selection, const ModelConfig& config) {
  const PlanarVector eps_e = rotate_minus_quarter(electric_field(selection, config));
  const PhaseExpression alpha(to_rational(config.alpha));
  return {alpha * eps_e[0], alpha * eps_e[1]};
}

PlanarVector kinetic_momenta(FieldSelection selection, const ModelConfig& config) {
  const PlanarVector a = effective_gauge_potential(selection, config);
  const PhaseExpression b(to_rational(config.B));
  return {PhaseExpression::variable(Var::P1) + b * a[0],
          PhaseExpression::variable(Var::P2) + b * a[1]};
}

HamiltonianSystem build_model(const ModelConfig& config, FieldSelection selection,
                              ReductionMode mode) {
  config.validate();
  if (mode == ReductionMode::Reduced && has_uniform_field(selection) &&
      config.alpha * config.rho * config.B == 0) {
    throw ConfigError("reduced model with the uniform field requires alpha*rho*B != 0");
  }

  using E = PhaseExpression;
  const PlanarVector field = electric_field(selection, config);
  const E field_sq = normalize_radial(field[0] * field[0] + field[1] * field[1]);
  const E x_sq = E::radial(1);
  const Rational half(1, 2);

  HamiltonianSystem system;
  system.config = config;
  system.selection = selection;
  system.mode = mode;

  E potential = E(-half * to_rational(config.alpha)) * field_sq + E(half * to_rational(config.K)) * x_sq;
  const PlanarVector pi = kinetic_momenta(selection, config);
  if (mode == ReductionMode::Full) {
    const Rational inv_two_m = Rational(1) / (2 * to_rational(config.m) +
                                              2 * to_rational(config.alpha) *
                                                  to_rational(config.B) * to_rational(config.B));
    E kinetic = E(inv_two_m) * (pi[0] * pi[0] + pi[1] * pi[1]);
    system.hamiltonian = normalize_radial(kinetic + potential);
  } else {
    system.hamiltonian = normalize_radial(potential);
    system.primary_constraints = {pi[0], pi[1]};
  }
  return system;
}

PhaseExpression canonical_angular_momentum() {
  using E = PhaseExpression;
  return E::variable(Var::X1) * E::variable(Var::P2) - E::variable(Var::X2) * E::variable(Var::P1);
}

PhaseExpression reduce_on_constraint_surface(const HamiltonianSystem& system,
                                             const PhaseExpression& f) {
  if (system.mode != ReductionMode::Reduced) {
    throw ModeError("constraint-surface reduction requires a reduced model");
  }
  // p_i = -B A_i
  const PlanarVector a = effective_gauge_potential(system.selection, system.config);
  const PhaseExpression minus_b(-to_rational(system.config.B));
  return normalize_radial(substitute_momenta(f, minus_b * a[0], minus_b * a[1]));
}

PhaseExpression reduce_J_on_constraint_surface(const HamiltonianSystem& system) {
  return reduce_on_constraint_surface(system, canonical_angular_momentum());
}

}  // namespace fracam
