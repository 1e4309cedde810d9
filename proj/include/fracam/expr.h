#pragma once

// Exact algebra for planar phase-space functions of the form
//
//   sum_k  c_k * x1^a x2^b p1^c p2^d * (r^2)^e,   r^2 = x1^2 + x2^2, e in Z
//
// with rational coefficients. The family is closed under +, *, d/dx_i,
// d/dp_i and therefore under Poisson brackets.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace fracam {

using Rational = mpq_class;

// Exact conversion; every finite double is a dyadic rational.
Rational to_rational(double value);
double to_double(const Rational& value);

enum class Var { X1, X2, P1, P2 };

struct Exponents {
  int x1 = 0;
  int x2 = 0;
  int p1 = 0;
  int p2 = 0;
  int r2 = 0;  // power of r^2, may be negative

  auto operator<=>(const Exponents&) const = default;
};

struct Monomial {
  Rational coeff;
  Exponents exps;
};

struct PhasePoint {
  std::array<double, 2> x{0.0, 0.0};
  std::array<double, 2> p{0.0, 0.0};
};

class PhaseExpression {
 public:
  using TermMap = std::map<Exponents, Rational>;

  PhaseExpression() = default;
  PhaseExpression(const Rational& c);  // NOLINT: constants convert implicitly
  PhaseExpression(int c) : PhaseExpression(Rational(c)) {}  // NOLINT

  static PhaseExpression monomial(const Rational& coeff, const Exponents& exps);
  static PhaseExpression variable(Var v);
  static PhaseExpression radial(int power);  // (r^2)^power

  bool empty() const { return m_terms.empty(); }
  std::size_t size() const { return m_terms.size(); }
  const TermMap& term_map() const { return m_terms; }
  std::vector<Monomial> terms() const;

  // True when some term carries a negative power of r^2.
  bool singular_at_origin() const;
  bool depends_on_momenta() const;
  // Constant value if the expression has only the all-zero exponent term.
  std::optional<Rational> constant() const;

  PhaseExpression& operator+=(const PhaseExpression& rhs);
  PhaseExpression& operator-=(const PhaseExpression& rhs);
  PhaseExpression& operator*=(const PhaseExpression& rhs);
  PhaseExpression& operator*=(const Rational& s);

  friend PhaseExpression operator+(PhaseExpression a, const PhaseExpression& b) { return a += b; }
  friend PhaseExpression operator-(PhaseExpression a, const PhaseExpression& b) { return a -= b; }
  friend PhaseExpression operator*(PhaseExpression a, const PhaseExpression& b) { return a *= b; }
  PhaseExpression operator-() const;

  // Structural equality of canonical term maps. Use `equivalent` for
  // equality as functions.
  friend bool operator==(const PhaseExpression&, const PhaseExpression&) = default;

  std::string to_string() const;

 private:
  void add_term(const Exponents& exps, const Rational& coeff);

  TermMap m_terms;
};

PhaseExpression add(const PhaseExpression& f, const PhaseExpression& g);
PhaseExpression mul(const PhaseExpression& f, const PhaseExpression& g);
PhaseExpression pow(const PhaseExpression& f, unsigned n);

// Rewrites equal-coefficient pairs c*x1^(a+2) x2^b ... + c*x1^a x2^(b+2) ...
// into c*x1^a x2^b ... (r^2)^(e+1) until no pair remains.
PhaseExpression normalize_radial(const PhaseExpression& f);

// Unique normal form: every x2^2 is replaced by r^2 - x1^2, so x2 appears
// at most linearly. Two expressions are equal as functions iff their
// normal forms are identical.
PhaseExpression normal_form(const PhaseExpression& f);

bool is_zero(const PhaseExpression& f);
bool equivalent(const PhaseExpression& f, const PhaseExpression& g);

// Zero test by evaluation at `count` points in the annulus
// 0.5 <= r <= 2 with momenta in [-1, 1]; relative to the term scale.
bool vanishes_numerically(const PhaseExpression& f, int count, std::uint64_t seed,
                          double tolerance = 1e-9);

PhaseExpression partial_derivative(const PhaseExpression& f, Var v);
PhaseExpression poisson_bracket(const PhaseExpression& f, const PhaseExpression& g);

// Replaces p1, p2 by the given expressions (which must not contain momenta).
PhaseExpression substitute_momenta(const PhaseExpression& f, const PhaseExpression& p1,
                                   const PhaseExpression& p2);

// Throws DomainError at the origin when a negative radial power is present.
double evaluate(const PhaseExpression& f, const PhasePoint& pt);

// Same expression with double coefficients, for hot evaluation loops.
class NumericExpression {
 public:
  NumericExpression() = default;
  explicit NumericExpression(const PhaseExpression& f);

  double operator()(const PhasePoint& pt) const;
  bool singular_at_origin() const { return m_singular; }

 private:
  struct Term {
    double coeff;
    Exponents exps;
  };
  std::vector<Term> m_terms;
  bool m_singular = false;
};

// Text form, e.g. "1/2*x1^2 - 3*p2*r2^-1". `parse_expression` inverts
// `PhaseExpression::to_string` exactly.
PhaseExpression parse_expression(std::string_view text);

std::string_view var_name(Var v);

}  // namespace fracam
