#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fracam/errors.h"
#include "fracam/models.h"

using namespace fracam;
using E = PhaseExpression;

namespace {

const E x1 = E::variable(Var::X1);
const E x2 = E::variable(Var::X2);
const E p1 = E::variable(Var::P1);
const E p2 = E::variable(Var::P2);

ModelConfig exact_config() {
  ModelConfig c;
  c.m = 1.5;
  c.alpha = 0.75;
  c.B = -1.25;
  c.k = 0.5;
  c.rho = 2.0;
  c.K = 3.0;
  c.hbar = 0.5;
  return c;
}

constexpr FieldSelection kSelections[] = {FieldSelection::Both, FieldSelection::E1Only,
                                          FieldSelection::E2Only};

}  // namespace

TEST_CASE("electric field components") {
  const ModelConfig c = exact_config();
  const Rational k = to_rational(c.k), rho = to_rational(c.rho);
  const auto both = electric_field(FieldSelection::Both, c);
  CHECK(both[0] == E(k) * x1 * E::radial(-1) + E(rho / 2) * x1);
  CHECK(both[1] == E(k) * x2 * E::radial(-1) + E(rho / 2) * x2);
  const auto e1 = electric_field(FieldSelection::E1Only, c);
  CHECK(e1[0] == E(k) * x1 * E::radial(-1));
  const auto e2 = electric_field(FieldSelection::E2Only, c);
  CHECK(e2[1] == E(rho / 2) * x2);
  // x . E = k + rho r^2 / 2
  CHECK(equivalent(x1 * both[0] + x2 * both[1], E(k) + E(rho / 2) * E::radial(1)));
}

TEST_CASE("rotate_minus_quarter uses eps_12 = +1") {
  const auto v = rotate_minus_quarter({x1, x2});
  CHECK(v[0] == x2);
  CHECK(v[1] == -x1);
}

TEST_CASE("primary constraints are p + B A") {
  for (FieldSelection s : kSelections) {
    const ModelConfig c = exact_config();
    const auto sys = build_model(c, s, ReductionMode::Reduced);
    const auto a = effective_gauge_potential(s, c);
    const auto field = electric_field(s, c);
    const Rational alpha = to_rational(c.alpha), b = to_rational(c.B);
    REQUIRE(sys.primary_constraints.size() == 2);
    CHECK(equivalent(sys.primary_constraints[0], p1 + E(b) * a[0]));
    CHECK(equivalent(sys.primary_constraints[1], p2 + E(b) * a[1]));
    CHECK(equivalent(sys.primary_constraints[0], p1 + E(alpha * b) * field[1]));
    CHECK(equivalent(sys.primary_constraints[1], p2 - E(alpha * b) * field[0]));
    const auto pi = kinetic_momenta(s, c);
    CHECK(equivalent(pi[0], sys.primary_constraints[0]));
  }
  CHECK(build_model(exact_config(), FieldSelection::Both, ReductionMode::Full)
            .primary_constraints.empty());
}

TEST_CASE("reduced Hamiltonian for the filament-only field") {
  const ModelConfig c = exact_config();
  const auto sys = build_model(c, FieldSelection::E1Only, ReductionMode::Reduced);
  const Rational alpha = to_rational(c.alpha), k = to_rational(c.k), kk = to_rational(c.K);
  const E expected = E(-alpha * k * k / 2) * E::radial(-1) + E(kk / 2) * E::radial(1);
  CHECK(equivalent(sys.hamiltonian, expected));
  CHECK_FALSE(sys.hamiltonian.depends_on_momenta());
}

TEST_CASE("full Hamiltonian at a point") {
  // Independent evaluation: pi = p + alpha B eps E, H = pi^2/2M - alpha E^2/2 + K r^2/2
  const ModelConfig c = exact_config();
  const auto sys = build_model(c, FieldSelection::Both, ReductionMode::Full);
  const PhasePoint pt{{0.7, -1.1}, {0.3, 0.9}};
  const double r2 = 0.7 * 0.7 + 1.1 * 1.1;
  const double ex = c.k * 0.7 / r2 + c.rho / 2 * 0.7;
  const double ey = c.k * -1.1 / r2 + c.rho / 2 * -1.1;
  const double pi1 = 0.3 + c.alpha * c.B * ey;
  const double pi2 = 0.9 - c.alpha * c.B * ex;
  const double h = (pi1 * pi1 + pi2 * pi2) / (2 * c.effective_mass()) -
                   c.alpha * (ex * ex + ey * ey) / 2 + c.K * r2 / 2;
  CHECK(evaluate(sys.hamiltonian, pt) == doctest::Approx(h).epsilon(1e-13));
}

TEST_CASE("angular momentum on the constraint surface") {
  const ModelConfig c = exact_config();
  const Rational ab = to_rational(c.alpha) * to_rational(c.B);
  const Rational k = to_rational(c.k), rho = to_rational(c.rho);
  const auto both = build_model(c, FieldSelection::Both, ReductionMode::Reduced);
  CHECK(equivalent(reduce_J_on_constraint_surface(both), E(ab * k) + E(ab * rho / 2) * E::radial(1)));
  const auto e2 = build_model(c, FieldSelection::E2Only, ReductionMode::Reduced);
  CHECK(equivalent(reduce_J_on_constraint_surface(e2), E(ab * rho / 2) * E::radial(1)));
  const auto e1 = build_model(c, FieldSelection::E1Only, ReductionMode::Reduced);
  CHECK(equivalent(reduce_J_on_constraint_surface(e1), E(ab * k)));
  const auto full = build_model(c, FieldSelection::Both, ReductionMode::Full);
  CHECK_THROWS_AS(reduce_J_on_constraint_surface(full), ModeError);
}

TEST_CASE("the constant part of J scales linearly with k") {
  ModelConfig c = exact_config();
  const auto j_of = [&](double k) {
    c.k = k;
    return reduce_J_on_constraint_surface(build_model(c, FieldSelection::E1Only, ReductionMode::Reduced))
        .constant()
        .value();
  };
  CHECK(j_of(1.0) * 2 == j_of(2.0));
  CHECK(j_of(0.0) == 0);
}

TEST_CASE("J commutes with H for every selection and mode") {
  for (FieldSelection s : kSelections) {
    for (ReductionMode mode : {ReductionMode::Full, ReductionMode::Reduced}) {
      const auto sys = build_model(exact_config(), s, mode);
      CHECK(is_zero(poisson_bracket(canonical_angular_momentum(), sys.hamiltonian)));
    }
  }
}

TEST_CASE("configuration validation") {
  ModelConfig c;
  CHECK_NOTHROW(c.validate());
  c.m = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ModelConfig{};
  c.K = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ModelConfig{};
  c.hbar = INFINITY;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = ModelConfig{};
  c.B = 0;
  CHECK_THROWS_AS(build_model(c, FieldSelection::Both, ReductionMode::Reduced), ConfigError);
  CHECK_NOTHROW(build_model(c, FieldSelection::E1Only, ReductionMode::Reduced));
  CHECK_NOTHROW(build_model(c, FieldSelection::Both, ReductionMode::Full));
}

TEST_CASE("selection and mode names") {
  CHECK(parse_selection("both") == FieldSelection::Both);
  CHECK(parse_selection("e1") == FieldSelection::E1Only);
  CHECK(parse_selection("e2") == FieldSelection::E2Only);
  CHECK_THROWS_AS(parse_selection("e3"), ConfigError);
  CHECK(parse_mode("full") == ReductionMode::Full);
  CHECK_THROWS_AS(parse_mode("half"), ConfigError);
  for (FieldSelection s : kSelections) CHECK(parse_selection(to_string(s)) == s);
}
