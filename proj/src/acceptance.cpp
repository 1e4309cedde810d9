#include "fracam/acceptance.h"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "fracam/constraints.h"
#include "fracam/dynamics.h"
#include "fracam/errors.h"
#include "fracam/quantum.h"
#include "fracam/report.h"

namespace fracam {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Check = std::function<Outcome()>;

CriterionResult run_timed(int id, std::string title, double limit, const Check& check) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.limit_seconds = limit;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = check();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const ThetaMismatch& e) {
    r.detail = std::string("ThetaMismatch: ") + e.what();
  } catch (const std::exception& e) {
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.passed && r.seconds > limit) {
    r.passed = false;
    r.detail += " [exceeded " + format_double(limit) + " s limit]";
  }
  return r;
}

SpectrumResult plane_spectrum(const ModelConfig& config, FieldSelection selection, int dim,
                              double perturbation) {
  const double theta = config.theta() * (1.0 + perturbation);
  const auto factory = [&](int n) {
    return fam_operator(config, selection, build_noncommutative_plane(theta, n));
  };
  return certified_spectrum(factory, dim, 0.5, fam_trusted_end(config, selection));
}

// Max |trusted_n - formula(n)| over n = 0 .. expected_count-1; infinity if
// fewer trusted eigenvalues were certified.
double ladder_error(const SpectrumResult& s, const ModelConfig& config, FieldSelection selection,
                    int expected_count) {
  if (s.trusted_count < expected_count) return INFINITY;
  const auto values = s.trusted();
  double worst = 0.0;
  for (int n = 0; n < expected_count; ++n) {
    worst = std::max(worst, std::abs(values[n] - fam_formula(config, selection, n)));
  }
  return worst;
}

double monomial_scale(const PhaseExpression& f, const PhasePoint& pt) {
  double s = 0.0;
  for (const auto& [exps, c] : f.term_map()) {
    s += std::abs(evaluate(PhaseExpression::monomial(c, exps), pt));
  }
  return s;
}

Outcome dirac_reproduction(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 10; ++i) {
    const ModelConfig config = random_config(rng, true);
    const auto analysis = analyze(build_model(config, FieldSelection::Both, ReductionMode::Reduced));
    const Rational expected =
        Rational(-1) / (to_rational(config.alpha) * to_rational(config.rho) * to_rational(config.B));
    const auto it = analysis.dirac_brackets.find({Var::X1, Var::X2});
    if (it == analysis.dirac_brackets.end() || !(it->second == PhaseExpression(expected))) {
      return {false, "config " + std::to_string(i) + ": {x1,x2}_D = " +
                         (it == analysis.dirac_brackets.end() ? "missing" : it->second.to_string())};
    }
  }
  return {true, "{x1,x2}_D == -1/(alpha rho B) exactly for 10 random configs"};
}

Outcome fam_spectrum_check(std::uint64_t seed, double perturbation) {
  const ModelConfig defaults;
  const double err0 = ladder_error(plane_spectrum(defaults, FieldSelection::Both, 64, perturbation),
                                   defaults, FieldSelection::Both, 32);
  if (!(err0 <= 1e-8)) {
    return {false, "default config: max |J_n - (0.5 + n + 1/2)| = " + format_double(err0)};
  }
  std::mt19937_64 rng(seed + 1);
  double worst = err0;
  for (int i = 0; i < 5; ++i) {
    const ModelConfig config = random_config(rng);
    const double err = ladder_error(plane_spectrum(config, FieldSelection::Both, 64, perturbation),
                                    config, FieldSelection::Both, 32);
    if (!(err <= 1e-8)) {
      return {false, "random config " + std::to_string(i) + ": max error " + format_double(err)};
    }
    worst = std::max(worst, err);
  }
  return {true, "32 trusted levels match alpha B k + (n+1/2) hbar within 1e-8 (default + 5 random)"};
}

Outcome integer_spectrum() {
  for (const double hbar : {1.0, 2.0}) {
    for (const int grid : {16, 64}) {
      const SpectrumResult s = full_model_angular_spectrum(grid, hbar);
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        const double n = s.eigenvalues[i] / hbar;
        const double expected = static_cast<double>(i) - grid / 2;
        if (std::abs(n - std::round(n)) > 1e-10 || std::abs(n - expected) > 1e-10) {
          return {false, "grid " + std::to_string(grid) + ": eigenvalue " +
                             format_double(s.eigenvalues[i]) + " is not an integer multiple of hbar"};
        }
      }
    }
  }
  return {true, "Fourier-grid J eigenvalues are n hbar, n = -N/2..N/2-1, within 1e-10"};
}

Outcome e2_ablation(double perturbation) {
  const ModelConfig config;
  const double err = ladder_error(plane_spectrum(config, FieldSelection::E2Only, 64, perturbation),
                                  config, FieldSelection::E2Only, 32);
  if (!(err <= 1e-8)) {
    return {false, "E2-only spectrum deviates from (n+1/2) hbar by " + format_double(err)};
  }
  const auto both = analyze(build_model(config, FieldSelection::Both, ReductionMode::Reduced));
  const auto e2 = analyze(build_model(config, FieldSelection::E2Only, ReductionMode::Reduced));
  const VariablePair xx{Var::X1, Var::X2};
  if (!(both.dirac_brackets.at(xx) == e2.dirac_brackets.at(xx))) {
    return {false, "E2-only {x1,x2}_D = " + e2.dirac_brackets.at(xx).to_string() +
                       " differs from both-fields " + both.dirac_brackets.at(xx).to_string()};
  }
  if (e2.classification.dof != 1) {
    return {false, "E2-only dof = " + std::to_string(e2.classification.dof)};
  }
  return {true, "(n+1/2) hbar within 1e-8; {x1,x2}_D identical to both-fields case"};
}

Outcome e1_ablation() {
  const ModelConfig config;
  const auto system = build_model(config, FieldSelection::E1Only, ReductionMode::Reduced);
  const auto analysis = analyze(system);
  if (analysis.constraints.size() != 4) {
    return {false, "chain has " + std::to_string(analysis.constraints.size()) + " constraints"};
  }
  const PlanarVector field = electric_field(FieldSelection::E1Only, config);
  const std::array<PhaseExpression, 2> x{PhaseExpression::variable(Var::X1),
                                         PhaseExpression::variable(Var::X2)};
  const Rational alpha_k = to_rational(config.alpha) * to_rational(config.k);
  for (std::size_t i = 0; i < 2; ++i) {
    const PhaseExpression expected = normalize_radial(
        PhaseExpression(alpha_k) * PhaseExpression::radial(-1) * field[i] +
        PhaseExpression(to_rational(config.K)) * x[i]);
    const Constraint& secondary = analysis.constraints[2 + i];
    if (secondary.generation != 1 || !(secondary.expr == expected)) {
      return {false, "secondary " + std::to_string(i + 1) + " = " + secondary.expr.to_string() +
                         ", expected " + expected.to_string()};
    }
  }
  const auto& cls = analysis.classification;
  if (cls.second_count != 4 || cls.first_count != 0 || cls.dof != 0) {
    return {false, "classification: " + std::to_string(cls.second_count) + " second, " +
                       std::to_string(cls.first_count) + " first, dof " + std::to_string(cls.dof)};
  }
  return {true, "4 constraints, secondaries (alpha k/r^2) E_i + K x_i, all second class, dof = 0"};
}

Outcome conservation() {
  const ModelConfig config;
  const auto system = build_model(config, FieldSelection::Both, ReductionMode::Full);
  const PhasePoint initial{{1.0, 0.0}, {0.0, 1.5}};
  const Trajectory traj = integrate(system, initial, 1e-3, 10000);
  const double dj = traj.max_relative_drift_J();
  const double dh = traj.max_relative_drift_H();
  const bool ok = dj < 1e-6 && dh < 1e-6;
  return {ok, "max relative drift J " + format_double(dj) + ", H " + format_double(dh) +
                  (ok ? " (< 1e-6)" : " (limit 1e-6)")};
}

Outcome bracket_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  const auto points = generic_sample_points(3, seed + 3);
  for (int trial = 0; trial < 100; ++trial) {
    const PhaseExpression f = random_phase_expression(rng);
    const PhaseExpression g = random_phase_expression(rng);
    const PhaseExpression h = random_phase_expression(rng);

    const PhaseExpression fg = poisson_bracket(f, g);
    const PhaseExpression gf = poisson_bracket(g, f);
    const PhaseExpression a = poisson_bracket(f, poisson_bracket(g, h));
    const PhaseExpression b = poisson_bracket(g, poisson_bracket(h, f));
    const PhaseExpression c = poisson_bracket(h, fg);
    const PhaseExpression leibniz =
        poisson_bracket(f, g * h) - (fg * h + g * poisson_bracket(f, h));
    if (!is_zero(leibniz)) {
      return {false, "Leibniz rule fails exactly for trial " + std::to_string(trial)};
    }
    for (const auto& pt : points) {
      const double anti = evaluate(fg, pt) + evaluate(gf, pt);
      const double anti_scale = std::max(1.0, monomial_scale(fg, pt));
      if (std::abs(anti) > 1e-9 * anti_scale) {
        return {false, "antisymmetry fails for trial " + std::to_string(trial)};
      }
      const double jac = evaluate(a, pt) + evaluate(b, pt) + evaluate(c, pt);
      const double jac_scale =
          std::max(1.0, monomial_scale(a, pt) + monomial_scale(b, pt) + monomial_scale(c, pt));
      if (std::abs(jac) > 1e-9 * jac_scale) {
        return {false, "Jacobi identity fails for trial " + std::to_string(trial) + ": residual " +
                           format_double(jac)};
      }
    }
  }

  std::mt19937_64 cfg_rng(seed + 4);
  for (int i = 0; i < 4; ++i) {
    const ModelConfig config = i == 0 ? ModelConfig{} : random_config(cfg_rng, true);
    const auto system = build_model(config, FieldSelection::Both, ReductionMode::Reduced);
    std::vector<Constraint> primaries;
    for (const auto& p : system.primary_constraints) primaries.push_back({p, 0, ""});
    const BracketMatrix m = bracket_matrix(primaries);
    const Rational arb = to_rational(config.alpha) * to_rational(config.rho) * to_rational(config.B);
    const bool exact = m(0, 0).empty() && m(1, 1).empty() && m(0, 1) == PhaseExpression(arb) &&
                       m(1, 0) == PhaseExpression(-arb);
    if (!exact) {
      return {false, "primary bracket matrix is not alpha rho B eps: {phi1,phi2} = " +
                         m(0, 1).to_string()};
    }
  }
  return {true, "antisymmetry, Jacobi, Leibniz on 100 random triples; {phi_i,phi_j} = alpha rho B eps_ij exactly"};
}

Outcome shift_and_spacing(double perturbation) {
  const ModelConfig base;
  ModelConfig shifted = base;
  const double delta = 0.375;
  shifted.k += delta;
  const auto s0 = plane_spectrum(base, FieldSelection::Both, 64, perturbation);
  const auto s1 = plane_spectrum(shifted, FieldSelection::Both, 64, perturbation);
  if (s0.trusted_count < 32 || s1.trusted_count < 32) {
    return {false, "fewer than 32 certified levels"};
  }
  const auto a = s0.trusted();
  const auto b = s1.trusted();
  const double shift = base.alpha * base.B * delta;
  double worst_shift = 0.0;
  double worst_spacing = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    worst_shift = std::max(worst_shift, std::abs((b[n] - a[n]) - shift));
    if (n > 0) worst_spacing = std::max(worst_spacing, std::abs((a[n] - a[n - 1]) - base.hbar));
  }
  const bool ok = worst_shift <= 1e-10 && worst_spacing <= 1e-8;
  return {ok, "shift error " + format_double(worst_shift) + " (tol 1e-10), spacing error " +
                  format_double(worst_spacing) + " (tol 1e-8)"};
}

}  // namespace

PhaseExpression random_phase_expression(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_terms(1, 3);
  std::uniform_int_distribution<int> slot(0, 3);
  std::uniform_int_distribution<int> degree(0, 3);
  std::uniform_int_distribution<int> radial(-2, 1);
  std::uniform_int_distribution<int> numer(-5, 5);
  std::uniform_int_distribution<int> denom(1, 4);
  PhaseExpression f;
  const int terms = n_terms(rng);
  for (int t = 0; t < terms; ++t) {
    Exponents e;
    const int deg = degree(rng);
    for (int d = 0; d < deg; ++d) {
      switch (slot(rng)) {
        case 0: ++e.x1; break;
        case 1: ++e.x2; break;
        case 2: ++e.p1; break;
        default: ++e.p2; break;
      }
    }
    e.r2 = radial(rng);
    int num = numer(rng);
    if (num == 0) num = 1;
    f += PhaseExpression::monomial(Rational(num, denom(rng)), e);
  }
  return f.empty() ? PhaseExpression::variable(Var::X1) : f;
}

ModelConfig random_config(std::mt19937_64& rng, bool allow_negative) {
  std::uniform_real_distribution<double> positive(0.2, 3.0);
  std::uniform_real_distribution<double> filament(-2.0, 2.0);
  std::uniform_real_distribution<double> planck(0.5, 2.0);
  std::bernoulli_distribution flip(0.5);
  ModelConfig c;
  c.m = positive(rng);
  c.alpha = positive(rng);
  c.B = positive(rng);
  c.k = filament(rng);
  c.rho = positive(rng);
  c.K = positive(rng);
  c.hbar = planck(rng);
  if (allow_negative) {
    if (flip(rng)) c.B = -c.B;
    if (flip(rng)) c.rho = -c.rho;
  }
  return c;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const std::uint64_t seed = options.seed;
  const double pert = options.theta_perturbation;
  std::vector<CriterionResult> out;
  out.push_back(run_timed(1, "Dirac-bracket reproduction", 1.0,
                          [&] { return dirac_reproduction(seed); }));
  out.push_back(run_timed(2, "FAM spectrum", 5.0, [&] { return fam_spectrum_check(seed, pert); }));
  out.push_back(run_timed(3, "Full-model integer spectrum", 1.0, [] { return integer_spectrum(); }));
  out.push_back(run_timed(4, "Ablation E2Only", 5.0, [&] { return e2_ablation(pert); }));
  out.push_back(run_timed(5, "Ablation E1Only", 2.0, [] { return e1_ablation(); }));
  out.push_back(run_timed(6, "Conservation", 10.0, [] { return conservation(); }));
  out.push_back(run_timed(7, "Bracket-engine property suite", 10.0,
                          [&] { return bracket_properties(seed); }));
  out.push_back(run_timed(8, "Shift/spacing laws", 5.0, [&] { return shift_and_spacing(pert); }));
  return out;
}

std::string format_acceptance_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  int passed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.title << ": " << r.detail << "\n";
    passed += r.passed ? 1 : 0;
  }
  os << passed << "/" << results.size() << " criteria passed\n";
  return os.str();
}

}  // namespace fracam
