#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fracam/acceptance.h"
#include "fracam/errors.h"
#include "fracam/expr.h"

using namespace fracam;
using E = PhaseExpression;

namespace {

const E x1 = E::variable(Var::X1);
const E x2 = E::variable(Var::X2);
const E p1 = E::variable(Var::P1);
const E p2 = E::variable(Var::P2);

std::vector<PhasePoint> random_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2 * M_PI), mom(-1.5, 1.5);
  std::vector<PhasePoint> pts;
  for (int i = 0; i < n; ++i) {
    const double r = radius(rng), a = angle(rng);
    pts.push_back({{r * std::cos(a), r * std::sin(a)}, {mom(rng), mom(rng)}});
  }
  return pts;
}

// Central difference of f along v, independent of partial_derivative.
double central_difference(const E& f, Var v, PhasePoint pt, double h = 1e-5) {
  PhasePoint lo = pt, hi = pt;
  double* slot_lo = v == Var::X1 ? &lo.x[0] : v == Var::X2 ? &lo.x[1] : v == Var::P1 ? &lo.p[0] : &lo.p[1];
  double* slot_hi = v == Var::X1 ? &hi.x[0] : v == Var::X2 ? &hi.x[1] : v == Var::P1 ? &hi.p[0] : &hi.p[1];
  *slot_lo -= h;
  *slot_hi += h;
  return (evaluate(f, hi) - evaluate(f, lo)) / (2 * h);
}

}  // namespace

TEST_CASE("add: additive inverse and two-component field") {
  CHECK((x1 + (-x1)).empty());
  const E field = E(Rational(1)) * x1 * E::radial(-1) + E(Rational(1, 2)) * x1;
  CHECK(field.size() == 2);
  CHECK(evaluate(field, {{1.0, 0.0}, {}}) == doctest::Approx(1.5));
}

TEST_CASE("add: explicit pair sum and (r^2)^1 agree as functions") {
  const E pair = x1 * x1 + x2 * x2;
  const E r2 = E::radial(1);
  for (const auto& pt : random_points(5, 1)) {
    CHECK(evaluate(pair, pt) == doctest::Approx(evaluate(r2, pt)).epsilon(1e-14));
  }
  CHECK(normalize_radial(pair) == r2);
}

TEST_CASE("mul: exponent addition") {
  const E a = x1 * E::radial(-1);
  CHECK(a * a == E::monomial(1, {2, 0, 0, 0, -2}));
  CHECK(E::radial(1) * E::radial(-1) == E(1));
  // E_i E_i for the filament field sums to k^2 r^-2
  const Rational k(3, 4);
  const E e1 = E(k) * x1 * E::radial(-1);
  const E e2 = E(k) * x2 * E::radial(-1);
  CHECK(normalize_radial(e1 * e1 + e2 * e2) == E::monomial(k * k, {0, 0, 0, 0, -1}));
}

TEST_CASE("normalize_radial") {
  CHECK(normalize_radial(x1 * x1 + x2 * x2) == E::radial(1));
  CHECK(normalize_radial(x1 * x1) == x1 * x1);
  const E unit = x1 * x1 * E::radial(-1) + x2 * x2 * E::radial(-1);
  for (const auto& pt : random_points(5, 2)) {
    CHECK(evaluate(unit, pt) == doctest::Approx(1.0));
  }
  CHECK(normalize_radial(unit) == E(1));
  // unequal coefficients are left alone
  const E skew = E(2) * x1 * x1 + x2 * x2;
  CHECK(normalize_radial(skew) == skew);
}

TEST_CASE("normalize_radial is idempotent and evaluation-preserving") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const E f = random_phase_expression(rng) * (x1 * x1 + x2 * x2) + random_phase_expression(rng);
    const E once = normalize_radial(f);
    CHECK(normalize_radial(once) == once);
    for (const auto& pt : random_points(2, 100 + i)) {
      CHECK(evaluate(once, pt) == doctest::Approx(evaluate(f, pt)).epsilon(1e-10));
    }
  }
}

TEST_CASE("normal_form decides zero") {
  // x2^4 - x1^4 = (x2^2 - x1^2) r^2, which pair rewriting cannot see
  const E z = pow(x2, 4) - pow(x1, 4) - x2 * x2 * E::radial(1) + x1 * x1 * E::radial(1);
  CHECK(normalize_radial(z).size() == 4);
  CHECK(is_zero(z));
  CHECK_FALSE(is_zero(x2 * x2 * p1));
  CHECK(equivalent(x2 * x2 * x2, x2 * E::radial(1) - x1 * x1 * x2));
}

TEST_CASE("partial_derivative") {
  const E f = x1 * E::radial(-1);
  const E expected = E::radial(-1) - E(2) * x1 * x1 * E::radial(-2);
  CHECK(partial_derivative(f, Var::X1) == expected);
  for (const auto& pt : random_points(5, 4)) {
    const double fd = central_difference(f, Var::X1, pt);
    const double exact = evaluate(expected, pt);
    CHECK(std::abs(fd - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
  }
  CHECK(partial_derivative(p1 * p1, Var::X1).empty());
  const Rational K(7, 3);
  CHECK(equivalent(partial_derivative(E(K / 2) * (x1 * x1 + x2 * x2), Var::X1), E(K) * x1));
  CHECK(equivalent(partial_derivative(E(K / 2) * E::radial(1), Var::X1), E(K) * x1));
}

TEST_CASE("partial_derivative matches central differences on random expressions") {
  std::mt19937_64 rng(5);
  const std::array<Var, 4> vars{Var::X1, Var::X2, Var::P1, Var::P2};
  for (int i = 0; i < 40; ++i) {
    const E f = random_phase_expression(rng);
    for (Var v : vars) {
      const E d = partial_derivative(f, v);
      for (const auto& pt : random_points(2, 200 + i)) {
        const double fd = central_difference(f, v, pt);
        const double exact = evaluate(d, pt);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("poisson_bracket: canonical brackets") {
  CHECK(poisson_bracket(x1, p1) == E(1));
  CHECK(poisson_bracket(x2, p2) == E(1));
  CHECK(poisson_bracket(x1, p2).empty());
  CHECK(poisson_bracket(x1, x2).empty());
  CHECK(poisson_bracket(p1, p2).empty());
}

TEST_CASE("poisson_bracket: primary constraints give alpha rho B") {
  const Rational alpha(3, 2), b(-2, 5), k(1, 3), rho(5, 7);
  const E e1 = E(k) * x1 * E::radial(-1) + E(rho / 2) * x1;
  const E e2 = E(k) * x2 * E::radial(-1) + E(rho / 2) * x2;
  const E phi1 = p1 + E(alpha * b) * e2;
  const E phi2 = p2 - E(alpha * b) * e1;
  const E pb = poisson_bracket(phi1, phi2);
  CHECK(normalize_radial(pb) == E(alpha * rho * b));
  CHECK(pb.constant() == alpha * rho * b);
}

TEST_CASE("poisson_bracket: Leibniz rule and antisymmetry, exactly") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    const E f = random_phase_expression(rng);
    const E g = random_phase_expression(rng);
    const E h = random_phase_expression(rng);
    CHECK(is_zero(poisson_bracket(f, g) + poisson_bracket(g, f)));
    CHECK(is_zero(poisson_bracket(f, g * h) -
                  (poisson_bracket(f, g) * h + g * poisson_bracket(f, h))));
  }
}

TEST_CASE("poisson_bracket: Jacobi identity, exactly and numerically") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const E f = random_phase_expression(rng);
    const E g = random_phase_expression(rng);
    const E h = random_phase_expression(rng);
    const E jacobi = poisson_bracket(f, poisson_bracket(g, h)) +
                     poisson_bracket(g, poisson_bracket(h, f)) +
                     poisson_bracket(h, poisson_bracket(f, g));
    CHECK(is_zero(jacobi));
    CHECK(vanishes_numerically(jacobi, 8, 900 + i));
  }
}

TEST_CASE("evaluate") {
  CHECK(evaluate(E::radial(-1), {{1.0, 1.0}, {}}) == doctest::Approx(0.5));
  const E j = x1 * p2 - x2 * p1;
  CHECK(evaluate(j, {{1.0, 0.0}, {0.0, 2.0}}) == doctest::Approx(2.0));
  const E field = x1 * E::radial(-1);
  CHECK(evaluate(field, {{2.0, 0.0}, {}}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(evaluate(E::radial(-1), {{0.0, 0.0}, {}}), DomainError);
  CHECK(evaluate(E::radial(2), {{0.0, 0.0}, {}}) == 0.0);
}

TEST_CASE("substitute_momenta") {
  const E j = x1 * p2 - x2 * p1;
  const E on_surface = substitute_momenta(j, -x2, x1);
  CHECK(normalize_radial(on_surface) == E::radial(1));
  CHECK_THROWS_AS(substitute_momenta(j, p1, x1), DomainError);
}

TEST_CASE("text form round-trips") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const E f = random_phase_expression(rng) * random_phase_expression(rng);
    CHECK(parse_expression(f.to_string()) == f);
  }
  CHECK(E().to_string() == "0");
  CHECK(parse_expression("1/2*x1^2") == E::monomial(Rational(1, 2), {2, 0, 0, 0, 0}));
  CHECK(parse_expression("-x1*r2^-1 + 0.25*p2") ==
        E::monomial(-1, {1, 0, 0, 0, -1}) + E::monomial(Rational(1, 4), {0, 0, 0, 1, 0}));
  CHECK_THROWS_AS(parse_expression("x3"), ParseError);
  CHECK_THROWS_AS(parse_expression("x1^-1"), ParseError);
  CHECK_THROWS_AS(parse_expression("x1 +"), ParseError);
}

TEST_CASE("to_rational is exact") {
  CHECK(to_rational(0.1) != Rational(1, 10));
  CHECK(to_double(to_rational(0.1)) == 0.1);
  CHECK(to_rational(0.375) == Rational(3, 8));
  CHECK_THROWS_AS(to_rational(NAN), DomainError);
}
