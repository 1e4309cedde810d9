#include "fracam/quantum.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "fracam/errors.h"

namespace fracam {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

bool uses_plane(FieldSelection selection) { return has_uniform_field(selection); }

}  // namespace

OperatorMatrix::OperatorMatrix(ComplexMatrix entries) : m_entries(std::move(entries)) {
  if (m_entries.rows() != m_entries.cols()) {
    throw BadDimension("operator matrix must be square");
  }
}

OperatorMatrix OperatorMatrix::identity(int dim) {
  return OperatorMatrix(ComplexMatrix::Identity(dim, dim));
}

bool OperatorMatrix::is_hermitian(double tolerance) const {
  return (m_entries - m_entries.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  return OperatorMatrix(a.m_entries + b.m_entries);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  return OperatorMatrix(a.m_entries * b.m_entries);
}

OperatorMatrix operator*(double s, const OperatorMatrix& a) { return OperatorMatrix(s * a.m_entries); }

std::vector<double> SpectrumResult::trusted() const {
  const auto n = static_cast<std::size_t>(trusted_count);
  if (trusted_end == TrustedEnd::Bottom) {
    return {eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(n)};
  }
  return {eigenvalues.rbegin(), eigenvalues.rbegin() + static_cast<std::ptrdiff_t>(n)};
}

OperatorMatrix NoncommutativePlane::radius_squared() const { return X1 * X1 + X2 * X2; }

OperatorMatrix annihilation(int dim) {
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return OperatorMatrix(std::move(a));
}

NoncommutativePlane build_noncommutative_plane(double theta, int dim) {
  if (dim < 4) {
    throw BadDimension("truncation dimension must be at least 4");
  }
  if (theta == 0.0 || !std::isfinite(theta)) {
    throw DomainError("noncommutativity theta must be finite and nonzero");
  }
  const ComplexMatrix a = annihilation(dim).entries();
  const ComplexMatrix ad = a.adjoint();
  const double c = std::sqrt(std::abs(theta) / 2.0);
  const double s = theta > 0 ? 1.0 : -1.0;

  NoncommutativePlane plane;
  plane.theta = theta;
  plane.X1 = OperatorMatrix(c * (a + ad));
  plane.X2 = OperatorMatrix((kI * s * c) * (a - ad));
  return plane;
}

OperatorMatrix fam_operator(const ModelConfig& config, FieldSelection selection,
                            const NoncommutativePlane& plane) {
  const double alpha_b = config.alpha * config.B;
  const OperatorMatrix constant = (alpha_b * config.k) * OperatorMatrix::identity(plane.dim());
  if (!uses_plane(selection)) {
    return constant;
  }
  const double expected = config.theta();
  if (!std::isfinite(expected) || std::abs(plane.theta - expected) > 1e-12 * std::abs(expected)) {
    throw ThetaMismatch("plane theta " + std::to_string(plane.theta) +
                        " does not match hbar/(alpha rho B) = " + std::to_string(expected));
  }
  const OperatorMatrix quadratic = (0.5 * alpha_b * config.rho) * plane.radius_squared();
  if (selection == FieldSelection::E2Only) {
    return quadratic;
  }
  return constant + quadratic;
}

double fam_formula(const ModelConfig& config, FieldSelection selection, int n) {
  const double constant = has_filament_field(selection) ? config.alpha * config.B * config.k : 0.0;
  if (!uses_plane(selection)) {
    return constant;
  }
  const double orientation = config.alpha * config.rho * config.B > 0 ? 1.0 : -1.0;
  return constant + orientation * (n + 0.5) * config.hbar;
}

SpectrumResult spectrum(const OperatorMatrix& op, double trusted_fraction, TrustedEnd end) {
  if (!(trusted_fraction > 0.0 && trusted_fraction <= 1.0)) {
    throw DomainError("trusted fraction must lie in (0, 1]");
  }
  if (!op.is_hermitian(1e-12 * std::max(1.0, op.entries().cwiseAbs().maxCoeff()))) {
    throw NonHermitian("operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  SpectrumResult result;
  const Eigen::VectorXd& values = solver.eigenvalues();
  result.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  result.truncation_dim = op.dim();
  result.trusted_count = static_cast<int>(std::floor(trusted_fraction * op.dim()));
  result.trusted_end = end;
  return result;
}

SpectrumResult certified_spectrum(const OperatorFactory& factory, int dim, double trusted_fraction,
                                  TrustedEnd end, double tolerance) {
  SpectrumResult coarse = spectrum(factory(dim), trusted_fraction, end);
  const SpectrumResult fine = spectrum(factory(2 * dim), trusted_fraction, end);
  const std::vector<double> a = coarse.trusted();
  const std::vector<double> b = fine.trusted();
  int agree = 0;
  while (agree < static_cast<int>(a.size()) && std::abs(a[agree] - b[agree]) <= tolerance) {
    ++agree;
  }
  coarse.trusted_count = agree;
  return coarse;
}

TrustedEnd fam_trusted_end(const ModelConfig& config, FieldSelection selection) {
  if (uses_plane(selection) && config.alpha * config.rho * config.B < 0) {
    return TrustedEnd::Top;
  }
  return TrustedEnd::Bottom;
}

SpectrumResult fam_spectrum(const ModelConfig& config, FieldSelection selection, int dim,
                            double trusted_fraction) {
  // Without the uniform field the operator is constant and theta is inert.
  const double theta = uses_plane(selection) ? config.theta() : 1.0;
  const auto factory = [&](int n) {
    return fam_operator(config, selection, build_noncommutative_plane(theta, n));
  };
  return certified_spectrum(factory, dim, trusted_fraction, fam_trusted_end(config, selection));
}

SpectrumResult full_model_angular_spectrum(int grid_size, double hbar) {
  if (grid_size < 8 || grid_size % 2 != 0) {
    throw BadGrid("angular grid size must be even and at least 8");
  }
  const int n = grid_size;
  // Wavenumbers -N/2 .. N/2-1; the Nyquist mode is assigned -N/2.
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      std::complex<double> sum = 0.0;
      const double dphi = 2.0 * M_PI * (row - col) / n;
      for (int k = -n / 2; k < n / 2; ++k) {
        sum += static_cast<double>(k) * std::exp(kI * (k * dphi));
      }
      j(row, col) = hbar * sum / static_cast<double>(n);
    }
  }
  return spectrum(OperatorMatrix(std::move(j)), 1.0);
}

}  // namespace fracam
