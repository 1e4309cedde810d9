#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fracam/acceptance.h"
#include "fracam/errors.h"
#include "fracam/quantum.h"

using namespace fracam;

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double max_error_vs(const std::vector<double>& values, const std::function<double(int)>& oracle) {
  double worst = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    worst = std::max(worst, std::abs(values[n] - oracle(static_cast<int>(n))));
  }
  return worst;
}

}  // namespace

TEST_CASE("radius squared has spectrum |theta| (2n + 1) below the corner") {
  for (double theta : {1.0, 0.5, -2.0}) {
    const auto plane = build_noncommutative_plane(theta, 16);
    const auto s = spectrum(plane.radius_squared(), 0.5);
    REQUIRE(s.trusted().size() == 8);
    CHECK(max_error_vs(s.trusted(), [&](int n) { return std::abs(theta) * (2 * n + 1); }) < 1e-12);
  }
}

TEST_CASE("commutator [X1, X2] = -i theta on the interior block") {
  for (double theta : {0.75, -1.25}) {
    const int n = 12;
    const auto plane = build_noncommutative_plane(theta, n);
    const ComplexMatrix comm = plane.X1.entries() * plane.X2.entries() -
                               plane.X2.entries() * plane.X1.entries();
    const ComplexMatrix expected = -kI * theta * ComplexMatrix::Identity(n - 1, n - 1);
    CHECK((comm.topLeftCorner(n - 1, n - 1) - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(plane.X1.is_hermitian());
    CHECK(plane.X2.is_hermitian());
  }
}

TEST_CASE("FAM spectra per selection, default configuration") {
  const ModelConfig c;
  const auto both = fam_spectrum(c, FieldSelection::Both, 64);
  REQUIRE(both.trusted_count == 32);
  CHECK(max_error_vs(both.trusted(), [](int n) { return 0.5 + (n + 0.5); }) < 1e-8);
  const auto e2 = fam_spectrum(c, FieldSelection::E2Only, 64);
  CHECK(max_error_vs(e2.trusted(), [](int n) { return n + 0.5; }) < 1e-8);
  const auto e1 = fam_spectrum(c, FieldSelection::E1Only, 16);
  REQUIRE(e1.trusted_count == 8);
  for (double v : e1.eigenvalues) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("identity and oscillator operators") {
  const auto id = spectrum(OperatorMatrix::identity(10), 1.0);
  for (double v : id.eigenvalues) CHECK(v == 1.0);
  const ComplexMatrix a = annihilation(32).entries();
  const OperatorMatrix number(a.adjoint() * a);
  const auto s = spectrum(number + 0.5 * OperatorMatrix::identity(32), 0.5);
  CHECK(max_error_vs(s.trusted(), [](int n) { return n + 0.5; }) < 1e-10);
}

TEST_CASE("random configurations match alpha B k + (n + 1/2) hbar") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const ModelConfig c = random_config(rng);
    const auto s = fam_spectrum(c, FieldSelection::Both, 64);
    REQUIRE(s.trusted_count == 32);
    const double shift = c.alpha * c.B * c.k;
    CHECK(max_error_vs(s.trusted(), [&](int n) { return shift + (n + 0.5) * c.hbar; }) <
          1e-8 * std::max(1.0, c.hbar * 64));
    // spacing hbar and fractional offset shift/hbar + 1/2
    const auto t = s.trusted();
    for (std::size_t n = 1; n < t.size(); ++n) {
      CHECK(t[n] - t[n - 1] == doctest::Approx(c.hbar).epsilon(1e-8));
    }
    const double frac = t[0] / c.hbar - 0.5 - shift / c.hbar;
    CHECK(std::abs(frac) < 1e-8);
  }
}

TEST_CASE("trusted levels do not move with the truncation") {
  const ModelConfig c;
  const auto a = fam_spectrum(c, FieldSelection::Both, 32).trusted();
  const auto b = fam_spectrum(c, FieldSelection::Both, 96).trusted();
  for (std::size_t n = 0; n < a.size(); ++n) CHECK(std::abs(a[n] - b[n]) < 1e-9);
  // beyond half the truncation the corner eigenvalue is not certified
  const auto greedy = fam_spectrum(c, FieldSelection::Both, 16, 1.0);
  CHECK(greedy.trusted_count < 16);
}

TEST_CASE("negative alpha rho B runs the ladder downward") {
  ModelConfig c;
  c.B = -1.0;
  CHECK(fam_trusted_end(c, FieldSelection::Both) == TrustedEnd::Top);
  const auto s = fam_spectrum(c, FieldSelection::Both, 64);
  REQUIRE(s.trusted_count == 32);
  CHECK(max_error_vs(s.trusted(), [](int n) { return -0.5 - (n + 0.5); }) < 1e-8);
  CHECK(fam_formula(c, FieldSelection::Both, 0) == -1.0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(build_noncommutative_plane(1.0, 3), BadDimension);
  CHECK_THROWS_AS(build_noncommutative_plane(0.0, 8), DomainError);
  const ModelConfig c;
  CHECK_THROWS_AS(fam_operator(c, FieldSelection::Both, build_noncommutative_plane(1.001, 8)),
                  ThetaMismatch);
  ComplexMatrix skew = ComplexMatrix::Zero(4, 4);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(spectrum(OperatorMatrix(skew), 1.0), NonHermitian);
  CHECK_THROWS_AS(full_model_angular_spectrum(6), BadGrid);
  CHECK_THROWS_AS(full_model_angular_spectrum(15), BadGrid);
}

TEST_CASE("full-model angular momentum is integer-valued") {
  const auto s = full_model_angular_spectrum(16);
  REQUIRE(s.eigenvalues.size() == 16);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(s.eigenvalues[i] - (i - 8)) < 1e-10);
  const auto h2 = full_model_angular_spectrum(16, 2.0);
  for (int i = 1; i < 16; ++i) {
    CHECK(h2.eigenvalues[i] - h2.eigenvalues[i - 1] == doctest::Approx(2.0));
  }
}
