#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fracam/models.h"

namespace fracam {

using ComplexMatrix = Eigen::MatrixXcd;

class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(ComplexMatrix entries);

  static OperatorMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_entries.rows()); }
  const ComplexMatrix& entries() const { return m_entries; }

  bool is_hermitian(double tolerance = 1e-12) const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(double s, const OperatorMatrix& a);

 private:
  ComplexMatrix m_entries;
};

// Which end of the ascending spectrum is free of truncation error.
enum class TrustedEnd { Bottom, Top };

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  int truncation_dim = 0;
  int trusted_count = 0;
  TrustedEnd trusted_end = TrustedEnd::Bottom;

  // Trusted eigenvalues ordered inward from the trusted end.
  std::vector<double> trusted() const;
};

// Truncated Fock-basis realization of [X1, X2] = -i theta.
struct NoncommutativePlane {
  double theta = 0.0;
  OperatorMatrix X1;
  OperatorMatrix X2;

  int dim() const { return X1.dim(); }
  // X1^2 + X2^2 = |theta| (2 a^dagger a + 1) away from the truncation corner.
  OperatorMatrix radius_squared() const;
};

// Annihilation operator a|n> = sqrt(n)|n-1> on span{|0>, ..., |N-1>}.
OperatorMatrix annihilation(int dim);

// X1 = c (a + a^dagger), X2 = i s c (a - a^dagger) with c = sqrt(|theta|/2)
// and s = sign(theta). Throws BadDimension for N < 4, DomainError for
// theta == 0.
NoncommutativePlane build_noncommutative_plane(double theta, int dim);

// Angular momentum reduced onto the constraint surface, as an operator on
// the noncommutative plane. Throws ThetaMismatch if the plane's theta is not
// hbar/(alpha rho B) for selections with the uniform field.
OperatorMatrix fam_operator(const ModelConfig& config, FieldSelection selection,
                            const NoncommutativePlane& plane);

// Closed form alpha B k + (n + 1/2) hbar, with the E2-only and E1-only
// variants (n+1/2) hbar and alpha B k. A negative alpha rho B reverses the
// ladder: alpha B k - (n + 1/2) hbar.
double fam_formula(const ModelConfig& config, FieldSelection selection, int n);

// Hermitian eigensolve. trustedCount = floor(fraction * N), uncertified.
SpectrumResult spectrum(const OperatorMatrix& op, double trusted_fraction,
                        TrustedEnd end = TrustedEnd::Bottom);

using OperatorFactory = std::function<OperatorMatrix(int dim)>;

// Diagonalizes at N and 2N; trustedCount is the prefix (at most
// floor(fraction * N)) on which the two agree within `tolerance`.
SpectrumResult certified_spectrum(const OperatorFactory& factory, int dim, double trusted_fraction,
                                  TrustedEnd end = TrustedEnd::Bottom, double tolerance = 1e-8);

// Top when the ladder runs downward (alpha rho B < 0 with the uniform field).
TrustedEnd fam_trusted_end(const ModelConfig& config, FieldSelection selection);

// Certified FAM spectrum on a plane built at the configuration's theta.
SpectrumResult fam_spectrum(const ModelConfig& config, FieldSelection selection, int dim,
                            double trusted_fraction = 0.5);

// -i hbar d/dphi by Fourier differentiation on gridSize periodic points.
// Throws BadGrid unless gridSize >= 8 and even.
SpectrumResult full_model_angular_spectrum(int grid_size, double hbar = 1.0);

}  // namespace fracam
