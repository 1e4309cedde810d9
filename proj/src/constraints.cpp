#include "fracam/constraints.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "fracam/errors.h"

namespace fracam {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kZeroEntry = 1e-12;

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

int numeric_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(kRankThreshold);
  return static_cast<int>(lu.rank());
}

// Constraints are defined up to a nonzero factor; fix the sign so the first
// canonical term is positive.
PhaseExpression sign_normalized(const PhaseExpression& f) {
  if (!f.empty() && f.term_map().begin()->second < 0) return -f;
  return f;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

std::optional<RationalMatrix> exact_inverse(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= scale;
      inv[col][j] /= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

// Basis of the right null space of an exact matrix.
std::vector<std::vector<Rational>> exact_null_space(RationalMatrix a) {
  const std::size_t n = a.size();
  std::vector<int> pivot_col_of_row;
  std::size_t row = 0;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t pivot = row;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[row]);
    const Rational scale = a[row][col];
    for (auto& v : a[row]) v /= scale;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= factor * a[row][j];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
      v[pivot_col_of_row[r]] = -a[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

int max_rank(const BracketMatrix& matrix, const std::vector<PhasePoint>& points) {
  int best = 0;
  for (const auto& pt : points) {
    best = std::max(best, numeric_rank(to_eigen(matrix.evaluate(pt))));
  }
  return best;
}

std::string constraint_label(int index, int generation) {
  return "phi" + std::to_string(index) + "^(" + std::to_string(generation) + ")";
}

}  // namespace

bool BracketMatrix::is_antisymmetric() const {
  for (std::size_t i = 0; i < m_size; ++i) {
    for (std::size_t j = i; j < m_size; ++j) {
      if (!fracam::is_zero((*this)(i, j) + (*this)(j, i))) return false;
    }
  }
  return true;
}

bool BracketMatrix::is_zero() const {
  return std::all_of(m_entries.begin(), m_entries.end(),
                     [](const PhaseExpression& e) { return fracam::is_zero(e); });
}

std::optional<std::vector<std::vector<Rational>>> BracketMatrix::constant_entries() const {
  std::vector<std::vector<Rational>> out(m_size, std::vector<Rational>(m_size));
  for (std::size_t i = 0; i < m_size; ++i) {
    for (std::size_t j = 0; j < m_size; ++j) {
      auto c = (*this)(i, j).constant();
      if (!c) return std::nullopt;
      out[i][j] = *c;
    }
  }
  return out;
}

std::vector<std::vector<double>> BracketMatrix::evaluate(const PhasePoint& pt) const {
  std::vector<std::vector<double>> out(m_size, std::vector<double>(m_size));
  for (std::size_t i = 0; i < m_size; ++i) {
    for (std::size_t j = 0; j < m_size; ++j) {
      out[i][j] = fracam::evaluate((*this)(i, j), pt);
    }
  }
  return out;
}

std::vector<PhasePoint> generic_sample_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> mom(-1.0, 1.0);
  std::vector<PhasePoint> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double r = radius(rng);
    const double phi = angle(rng);
    const double p1 = mom(rng);
    const double p2 = mom(rng);
    points.push_back({{r * std::cos(phi), r * std::sin(phi)}, {p1, p2}});
  }
  return points;
}

BracketMatrix bracket_matrix(const std::vector<Constraint>& constraints) {
  if (constraints.empty()) {
    throw DomainError("bracket matrix needs at least one constraint");
  }
  BracketMatrix m(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = 0; j < constraints.size(); ++j) {
      const PhaseExpression pb = poisson_bracket(constraints[i].expr, constraints[j].expr);
      m(i, j) = is_zero(pb) ? PhaseExpression{} : normalize_radial(pb);
    }
  }
  return m;
}

std::vector<Constraint> generate_constraint_chain(const HamiltonianSystem& system,
                                                  int max_generation, std::uint64_t seed) {
  if (system.mode != ReductionMode::Reduced) {
    throw ModeError("constraint analysis requires a reduced model");
  }
  if (max_generation < 1) {
    throw ConfigError("maxGeneration must be at least 1");
  }
  const auto points = generic_sample_points(8, seed);

  std::vector<Constraint> chain;
  for (std::size_t i = 0; i < system.primary_constraints.size(); ++i) {
    chain.push_back({system.primary_constraints[i], 0, constraint_label(static_cast<int>(i) + 1, 0)});
  }
  std::size_t frontier_begin = 0;

  for (int generation = 0;; ++generation) {
    const BracketMatrix c = bracket_matrix(chain);
    if (max_rank(c, points) == static_cast<int>(chain.size())) {
      break;  // multipliers absorb every consistency condition
    }

    std::vector<PhaseExpression> conditions;
    if (c.is_zero()) {
      for (std::size_t a = frontier_begin; a < chain.size(); ++a) {
        conditions.push_back(poisson_bracket(chain[a].expr, system.hamiltonian));
      }
    } else if (auto exact = c.constant_entries()) {
      // Null vectors v of C leave v_a {phi_a, H} ~ 0 as a condition.
      for (const auto& v : exact_null_space(*exact)) {
        PhaseExpression cond;
        for (std::size_t a = 0; a < chain.size(); ++a) {
          if (v[a] != 0) {
            cond += PhaseExpression(v[a]) * poisson_bracket(chain[a].expr, system.hamiltonian);
          }
        }
        conditions.push_back(std::move(cond));
      }
    } else {
      throw DegeneratePoint(
          "partially degenerate position-dependent bracket matrix is not supported");
    }

    std::vector<Constraint> fresh;
    for (const auto& raw : conditions) {
      const PhaseExpression reduced = reduce_on_constraint_surface(system, raw);
      if (is_zero(reduced)) continue;
      const PhaseExpression candidate = sign_normalized(reduced);
      const auto known = [&](const Constraint& existing) {
        return equivalent(existing.expr, candidate) || equivalent(existing.expr, -candidate);
      };
      if (std::any_of(chain.begin(), chain.end(), known) ||
          std::any_of(fresh.begin(), fresh.end(), known)) {
        continue;
      }
      const int index = static_cast<int>(fresh.size()) + 1;
      fresh.push_back({candidate, generation + 1, constraint_label(index, generation + 1)});
    }
    if (fresh.empty()) break;
    if (generation + 1 > max_generation) {
      throw ChainOverflow("constraint chain still growing past generation " +
                          std::to_string(max_generation));
    }
    frontier_begin = chain.size();
    chain.insert(chain.end(), fresh.begin(), fresh.end());
  }
  return chain;
}

Classification classify(const BracketMatrix& matrix, const std::vector<PhasePoint>& sample_points) {
  if (sample_points.empty()) {
    throw DegeneratePoint("classification needs at least one sample point");
  }
  const std::size_t n = matrix.size();
  Classification out;
  std::vector<bool> row_vanishes(n, true);
  for (const auto& pt : sample_points) {
    const auto values = matrix.evaluate(pt);
    const Eigen::MatrixXd m = to_eigen(values);
    out.ranks.push_back(numeric_rank(m));
    out.determinants.push_back(m.determinant());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(values[i][j]) > kZeroEntry) row_vanishes[i] = false;
      }
    }
  }
  const int rank = *std::max_element(out.ranks.begin(), out.ranks.end());
  const bool disagree =
      std::any_of(out.ranks.begin(), out.ranks.end(), [&](int r) { return r != rank; });
  if (disagree && rank < static_cast<int>(n)) {
    throw DegeneratePoint("sample points disagree on the bracket-matrix rank; resample");
  }

  out.second_count = rank;
  out.first_count = static_cast<int>(n) - rank;
  const int zero_rows = static_cast<int>(std::count(row_vanishes.begin(), row_vanishes.end(), true));
  if (zero_rows != out.first_count) {
    throw DegeneratePoint("first-class constraints are linear combinations; cannot label individually");
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.labels.push_back(row_vanishes[i] ? ConstraintClass::First : ConstraintClass::Second);
  }
  const int twice_dof = 4 - 2 * out.first_count - out.second_count;
  if (twice_dof < 0 || twice_dof % 2 != 0) {
    throw DegeneratePoint("inconsistent constraint count for a 4-dimensional phase space");
  }
  out.dof = twice_dof / 2;
  return out;
}

PhaseExpression dirac_bracket(const PhaseExpression& f, const PhaseExpression& g,
                              const ConstraintAnalysis& analysis) {
  if (!analysis.inverse) {
    throw SingularMatrix("no exact inverse of the constraint bracket matrix");
  }
  const auto& inv = *analysis.inverse;
  const std::size_t n = analysis.constraints.size();
  std::vector<PhaseExpression> f_c(n);
  std::vector<PhaseExpression> c_g(n);
  for (std::size_t k = 0; k < n; ++k) {
    f_c[k] = poisson_bracket(f, analysis.constraints[k].expr);
    c_g[k] = poisson_bracket(analysis.constraints[k].expr, g);
  }
  PhaseExpression result = poisson_bracket(f, g);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      if (inv[k][l] == 0) continue;
      result -= f_c[k] * PhaseExpression(inv[k][l]) * c_g[l];
    }
  }
  return is_zero(result) ? PhaseExpression{} : normalize_radial(result);
}

double dirac_bracket_at(const PhaseExpression& f, const PhaseExpression& g,
                        const ConstraintAnalysis& analysis, const PhasePoint& pt) {
  const Eigen::MatrixXd c = to_eigen(analysis.matrix.evaluate(pt));
  const auto n = c.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  lu.setThreshold(kRankThreshold);
  if (lu.rank() < n) {
    throw SingularMatrix("constraint bracket matrix is singular at the evaluation point");
  }
  Eigen::VectorXd f_c(n);
  Eigen::VectorXd c_g(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& ck = analysis.constraints[static_cast<std::size_t>(k)].expr;
    f_c(k) = evaluate(poisson_bracket(f, ck), pt);
    c_g(k) = evaluate(poisson_bracket(ck, g), pt);
  }
  return evaluate(poisson_bracket(f, g), pt) - f_c.dot(lu.solve(c_g));
}

ConstraintAnalysis analyze(const HamiltonianSystem& system, const AnalysisOptions& options) {
  ConstraintAnalysis a;
  a.system = system;
  a.constraints = generate_constraint_chain(system, options.max_generation, options.seed);
  a.matrix = bracket_matrix(a.constraints);
  a.sample_points = generic_sample_points(options.sample_count, options.seed);
  a.classification = classify(a.matrix, a.sample_points);
  if (auto exact = a.matrix.constant_entries()) {
    a.inverse = exact_inverse(*exact);
  }
  if (a.inverse) {
    const std::array<Var, 4> vars{Var::X1, Var::X2, Var::P1, Var::P2};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (std::size_t j = i + 1; j < vars.size(); ++j) {
        a.dirac_brackets[{vars[i], vars[j]}] =
            dirac_bracket(PhaseExpression::variable(vars[i]), PhaseExpression::variable(vars[j]), a);
      }
    }
  }
  return a;
}

QuantizedBrackets quantize_brackets(const ConstraintAnalysis& analysis,
                                    const std::vector<VariablePair>& pairs) {
  if (analysis.dirac_brackets.empty()) {
    throw SingularMatrix("no Dirac brackets available to quantize");
  }
  const double hbar = analysis.system.config.hbar;
  QuantizedBrackets out;
  for (const auto& pair : pairs) {
    double value = 0.0;
    if (pair.first != pair.second) {
      const bool swapped = analysis.dirac_brackets.count(pair) == 0;
      const VariablePair key = swapped ? VariablePair{pair.second, pair.first} : pair;
      const auto it = analysis.dirac_brackets.find(key);
      if (it == analysis.dirac_brackets.end()) {
        throw SingularMatrix("requested Dirac bracket was not computed");
      }
      const auto c = it->second.constant();
      if (!c) {
        throw NonConstantBracket("Dirac bracket {" + std::string(var_name(key.first)) + "," +
                                 std::string(var_name(key.second)) + "} is position dependent");
      }
      value = hbar * to_double(*c) * (swapped ? -1.0 : 1.0);
    }
    out.commutators[pair] = value;
    if (pair == VariablePair{Var::X1, Var::X2}) out.theta = -value;
    if (pair == VariablePair{Var::X2, Var::X1}) out.theta = value;
  }
  return out;
}

}  // namespace fracam
