#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fracam/expr.h"
#include "fracam/models.h"

namespace fracam {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 7;
  // Relative error injected into the noncommutative plane's theta; any
  // nonzero value must make the spectral criteria fail.
  double theta_perturbation = 0.0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// One "PASS"/"FAIL" line per criterion; deterministic (no timings).
std::string format_acceptance_table(const std::vector<CriterionResult>& results);

// Random element of the expression algebra: 1-3 terms, total polynomial
// degree <= 3, radial power in [-2, 1], small rational coefficients.
PhaseExpression random_phase_expression(std::mt19937_64& rng);

// Random configuration with alpha, rho, B bounded away from zero. Signs of
// rho and B are positive unless `allow_negative`.
ModelConfig random_config(std::mt19937_64& rng, bool allow_negative = false);

}  // namespace fracam
