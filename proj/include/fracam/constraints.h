#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracam/expr.h"
#include "fracam/models.h"

namespace fracam {

struct Constraint {
  PhaseExpression expr;
  int generation = 0;  // 0 primary, 1 secondary, ...
  std::string label;
};

// Square matrix of Poisson brackets {c_i, c_j}, stored row-major.
class BracketMatrix {
 public:
  BracketMatrix() = default;
  explicit BracketMatrix(std::size_t size) : m_size(size), m_entries(size * size) {}

  std::size_t size() const { return m_size; }
  const PhaseExpression& operator()(std::size_t i, std::size_t j) const {
    return m_entries[i * m_size + j];
  }
  PhaseExpression& operator()(std::size_t i, std::size_t j) { return m_entries[i * m_size + j]; }

  bool is_antisymmetric() const;
  bool is_zero() const;
  // Exact rational entries if every entry is constant.
  std::optional<std::vector<std::vector<Rational>>> constant_entries() const;
  std::vector<std::vector<double>> evaluate(const PhasePoint& pt) const;

 private:
  std::size_t m_size = 0;
  std::vector<PhaseExpression> m_entries;
};

enum class ConstraintClass { First, Second };

struct Classification {
  std::vector<ConstraintClass> labels;
  std::vector<int> ranks;  // numeric rank at each sample point
  int first_count = 0;
  int second_count = 0;
  int dof = 0;
  std::vector<double> determinants;  // det at each sample point
};

using VariablePair = std::pair<Var, Var>;

struct ConstraintAnalysis {
  HamiltonianSystem system;
  std::vector<Constraint> constraints;
  BracketMatrix matrix;
  Classification classification;
  // Exact inverse of the bracket matrix when it is constant and invertible.
  std::optional<std::vector<std::vector<Rational>>> inverse;
  std::map<VariablePair, PhaseExpression> dirac_brackets;
  std::vector<PhasePoint> sample_points;
};

// Uniform in the annulus 0.5 <= r <= 2, momenta uniform in [-1, 1].
std::vector<PhasePoint> generic_sample_points(int count, std::uint64_t seed);

// Dirac-Bergmann consistency iteration. Throws ModeError for Full systems
// and ChainOverflow if new constraints keep appearing past maxGeneration.
std::vector<Constraint> generate_constraint_chain(const HamiltonianSystem& system,
                                                  int max_generation,
                                                  std::uint64_t seed = 20240611);

BracketMatrix bracket_matrix(const std::vector<Constraint>& constraints);

Classification classify(const BracketMatrix& matrix, const std::vector<PhasePoint>& sample_points);

// {f,g} - {f,c_k} C^{-1}_{kl} {c_l,g}; exact for constant C. Throws
// SingularMatrix when no exact inverse is available.
PhaseExpression dirac_bracket(const PhaseExpression& f, const PhaseExpression& g,
                              const ConstraintAnalysis& analysis);

// Numeric Dirac bracket at a point; works for position-dependent C.
double dirac_bracket_at(const PhaseExpression& f, const PhaseExpression& g,
                        const ConstraintAnalysis& analysis, const PhasePoint& pt);

struct AnalysisOptions {
  int max_generation = 3;
  int sample_count = 8;
  std::uint64_t seed = 20240611;
};

ConstraintAnalysis analyze(const HamiltonianSystem& system, const AnalysisOptions& options = {});

struct QuantizedBrackets {
  // [f, g] = i * value
  std::map<VariablePair, double> commutators;
  // [x1, x2] = -i theta
  std::optional<double> theta;
};

// Replaces {,} by [,]/(i hbar) for the requested constant Dirac brackets.
// Throws NonConstantBracket when a requested bracket depends on position.
QuantizedBrackets quantize_brackets(const ConstraintAnalysis& analysis,
                                    const std::vector<VariablePair>& pairs = {{Var::X1, Var::X2}});

}  // namespace fracam
