#include "fracam/expr.h"

#include <cctype>
#include <cmath>
#include <random>

#include "fracam/errors.h"

namespace fracam {

Rational to_rational(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("cannot convert non-finite value to a rational");
  }
  Rational q(value);
  q.canonicalize();
  return q;
}

double to_double(const Rational& value) { return value.get_d(); }

namespace {

double ipow(double base, int n) {
  if (n < 0) {
    return 1.0 / ipow(base, -n);
  }
  double result = 1.0;
  while (n > 0) {
    if (n & 1) {
      result *= base;
    }
    base *= base;
    n >>= 1;
  }
  return result;
}

Exponents operator+(const Exponents& a, const Exponents& b) {
  return {a.x1 + b.x1, a.x2 + b.x2, a.p1 + b.p1, a.p2 + b.p2, a.r2 + b.r2};
}

int& exponent_of(Exponents& e, Var v) {
  switch (v) {
    case Var::X1: return e.x1;
    case Var::X2: return e.x2;
    case Var::P1: return e.p1;
    case Var::P2: return e.p2;
  }
  return e.x1;
}

int exponent_of(const Exponents& e, Var v) {
  Exponents copy = e;
  return exponent_of(copy, v);
}

}  // namespace

std::string_view var_name(Var v) {
  switch (v) {
    case Var::X1: return "x1";
    case Var::X2: return "x2";
    case Var::P1: return "p1";
    case Var::P2: return "p2";
  }
  return "?";
}

PhaseExpression::PhaseExpression(const Rational& c) {
  add_term(Exponents{}, c);
}

PhaseExpression PhaseExpression::monomial(const Rational& coeff, const Exponents& exps) {
  if (exps.x1 < 0 || exps.x2 < 0 || exps.p1 < 0 || exps.p2 < 0) {
    throw DomainError("monomial exponents of x and p must be nonnegative");
  }
  PhaseExpression e;
  e.add_term(exps, coeff);
  return e;
}

PhaseExpression PhaseExpression::variable(Var v) {
  Exponents exps;
  exponent_of(exps, v) = 1;
  return monomial(1, exps);
}

PhaseExpression PhaseExpression::radial(int power) {
  return monomial(1, Exponents{0, 0, 0, 0, power});
}

std::vector<Monomial> PhaseExpression::terms() const {
  std::vector<Monomial> out;
  out.reserve(m_terms.size());
  for (const auto& [exps, c] : m_terms) {
    out.push_back({c, exps});
  }
  return out;
}

bool PhaseExpression::singular_at_origin() const {
  for (const auto& [exps, c] : m_terms) {
    if (exps.r2 < 0) {
      return true;
    }
  }
  return false;
}

bool PhaseExpression::depends_on_momenta() const {
  for (const auto& [exps, c] : m_terms) {
    if (exps.p1 != 0 || exps.p2 != 0) {
      return true;
    }
  }
  return false;
}

std::optional<Rational> PhaseExpression::constant() const {
  const PhaseExpression nf = normal_form(*this);
  if (nf.empty()) {
    return Rational(0);
  }
  if (nf.size() == 1 && nf.m_terms.begin()->first == Exponents{}) {
    return nf.m_terms.begin()->second;
  }
  return std::nullopt;
}

void PhaseExpression::add_term(const Exponents& exps, const Rational& coeff) {
  if (coeff == 0) {
    return;
  }
  // gmp keeps canonical operands canonical, but callers may pass a raw n/d
  Rational c = coeff;
  c.canonicalize();
  auto [it, inserted] = m_terms.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      m_terms.erase(it);
    }
  }
}

PhaseExpression& PhaseExpression::operator+=(const PhaseExpression& rhs) {
  for (const auto& [exps, c] : rhs.m_terms) {
    add_term(exps, c);
  }
  return *this;
}

PhaseExpression& PhaseExpression::operator-=(const PhaseExpression& rhs) {
  for (const auto& [exps, c] : rhs.m_terms) {
    add_term(exps, -c);
  }
  return *this;
}

PhaseExpression& PhaseExpression::operator*=(const PhaseExpression& rhs) {
  PhaseExpression product;
  for (const auto& [ea, ca] : m_terms) {
    for (const auto& [eb, cb] : rhs.m_terms) {
      product.add_term(ea + eb, ca * cb);
    }
  }
  *this = std::move(product);
  return *this;
}

PhaseExpression& PhaseExpression::operator*=(const Rational& s) {
  if (s == 0) {
    m_terms.clear();
    return *this;
  }
  for (auto& [exps, c] : m_terms) {
    c *= s;
  }
  return *this;
}

PhaseExpression PhaseExpression::operator-() const {
  PhaseExpression out = *this;
  out *= Rational(-1);
  return out;
}

std::string PhaseExpression::to_string() const {
  if (m_terms.empty()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (const auto& [exps, c] : m_terms) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::vector<std::string> factors;
    auto push = [&](std::string_view name, int power) {
      if (power == 0) return;
      std::string f(name);
      if (power != 1) f += "^" + std::to_string(power);
      factors.push_back(std::move(f));
    };
    push("x1", exps.x1);
    push("x2", exps.x2);
    push("p1", exps.p1);
    push("p2", exps.p2);
    push("r2", exps.r2);

    std::string term;
    if (mag != 1 || factors.empty()) {
      term = mag.get_str();
    }
    for (const auto& f : factors) {
      if (!term.empty()) term += "*";
      term += f;
    }
    out += term;
  }
  return out;
}

PhaseExpression add(const PhaseExpression& f, const PhaseExpression& g) { return f + g; }

PhaseExpression mul(const PhaseExpression& f, const PhaseExpression& g) { return f * g; }

PhaseExpression pow(const PhaseExpression& f, unsigned n) {
  PhaseExpression result(1);
  for (unsigned i = 0; i < n; ++i) {
    result *= f;
  }
  return result;
}

PhaseExpression normalize_radial(const PhaseExpression& f) {
  PhaseExpression::TermMap terms = f.term_map();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [exps, c] : terms) {
      if (exps.x1 < 2) continue;
      Exponents partner = exps;
      partner.x1 -= 2;
      partner.x2 += 2;
      auto it = terms.find(partner);
      if (it == terms.end() || it->second != c) continue;

      Exponents merged = partner;
      merged.x2 -= 2;
      merged.r2 += 1;
      const Rational coeff = c;
      const Exponents self = exps;
      terms.erase(it);
      terms.erase(self);
      auto [slot, inserted] = terms.try_emplace(merged, coeff);
      if (!inserted) {
        slot->second += coeff;
        if (slot->second == 0) terms.erase(slot);
      }
      changed = true;
      break;
    }
  }
  PhaseExpression out;
  for (const auto& [exps, c] : terms) {
    out += PhaseExpression::monomial(c, exps);
  }
  return out;
}

PhaseExpression normal_form(const PhaseExpression& f) {
  PhaseExpression out;
  for (const auto& [exps, c] : f.term_map()) {
    if (exps.x2 < 2) {
      out += PhaseExpression::monomial(c, exps);
      continue;
    }
    // x2^(2m + s) = x2^s (r^2 - x1^2)^m
    const int m = exps.x2 / 2;
    Exponents base = exps;
    base.x2 = exps.x2 % 2;
    mpz_class binom = 1;
    for (int j = 0; j <= m; ++j) {
      Exponents e = base;
      e.x1 += 2 * j;
      e.r2 += m - j;
      Rational coeff = c * Rational(binom);
      if (j % 2 == 1) coeff = -coeff;
      out += PhaseExpression::monomial(coeff, e);
      binom = binom * (m - j) / (j + 1);
    }
  }
  return out;
}

bool is_zero(const PhaseExpression& f) {
  return f.empty() || normalize_radial(f).empty() || normal_form(f).empty();
}

bool equivalent(const PhaseExpression& f, const PhaseExpression& g) { return is_zero(f - g); }

bool vanishes_numerically(const PhaseExpression& f, int count, std::uint64_t seed,
                          double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> mom(-1.0, 1.0);
  for (int i = 0; i < count; ++i) {
    const double r = radius(rng);
    const double phi = angle(rng);
    PhasePoint pt{{r * std::cos(phi), r * std::sin(phi)}, {mom(rng), mom(rng)}};
    double scale = 0.0;
    for (const auto& [exps, c] : f.term_map()) {
      scale += std::abs(evaluate(PhaseExpression::monomial(c, exps), pt));
    }
    if (std::abs(evaluate(f, pt)) > tolerance * std::max(1.0, scale)) {
      return false;
    }
  }
  return true;
}

PhaseExpression partial_derivative(const PhaseExpression& f, Var v) {
  PhaseExpression out;
  const bool spatial = v == Var::X1 || v == Var::X2;
  for (const auto& [exps, c] : f.term_map()) {
    const int n = exponent_of(exps, v);
    if (n > 0) {
      Exponents e = exps;
      exponent_of(e, v) -= 1;
      out += PhaseExpression::monomial(c * n, e);
    }
    // d/dx_i (r^2)^k = 2k x_i (r^2)^(k-1)
    if (spatial && exps.r2 != 0) {
      Exponents e = exps;
      exponent_of(e, v) += 1;
      e.r2 -= 1;
      out += PhaseExpression::monomial(c * (2 * exps.r2), e);
    }
  }
  return out;
}

PhaseExpression poisson_bracket(const PhaseExpression& f, const PhaseExpression& g) {
  PhaseExpression out;
  out += partial_derivative(f, Var::X1) * partial_derivative(g, Var::P1);
  out += partial_derivative(f, Var::X2) * partial_derivative(g, Var::P2);
  out -= partial_derivative(f, Var::P1) * partial_derivative(g, Var::X1);
  out -= partial_derivative(f, Var::P2) * partial_derivative(g, Var::X2);
  return out;
}

PhaseExpression substitute_momenta(const PhaseExpression& f, const PhaseExpression& p1,
                                   const PhaseExpression& p2) {
  if (p1.depends_on_momenta() || p2.depends_on_momenta()) {
    throw DomainError("momentum substitution must be a function of position only");
  }
  PhaseExpression out;
  for (const auto& [exps, c] : f.term_map()) {
    Exponents rest = exps;
    rest.p1 = 0;
    rest.p2 = 0;
    out += PhaseExpression::monomial(c, rest) * pow(p1, exps.p1) * pow(p2, exps.p2);
  }
  return out;
}

double evaluate(const PhaseExpression& f, const PhasePoint& pt) {
  return NumericExpression(f)(pt);
}

NumericExpression::NumericExpression(const PhaseExpression& f) {
  m_terms.reserve(f.size());
  for (const auto& [exps, c] : f.term_map()) {
    m_terms.push_back({to_double(c), exps});
    m_singular = m_singular || exps.r2 < 0;
  }
}

double NumericExpression::operator()(const PhasePoint& pt) const {
  const double r2 = pt.x[0] * pt.x[0] + pt.x[1] * pt.x[1];
  if (m_singular && r2 == 0.0) {
    throw DomainError("negative power of r^2 evaluated at the origin");
  }
  double sum = 0.0;
  for (const auto& t : m_terms) {
    sum += t.coeff * ipow(pt.x[0], t.exps.x1) * ipow(pt.x[1], t.exps.x2) *
           ipow(pt.p[0], t.exps.p1) * ipow(pt.p[1], t.exps.p2) * ipow(r2, t.exps.r2);
  }
  return sum;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : m_text(text) {}

  PhaseExpression parse() {
    PhaseExpression result;
    skip_space();
    if (at_end()) fail("empty expression");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    while (true) {
      PhaseExpression t = term();
      if (negative) {
        result -= t;
      } else {
        result += t;
      }
      skip_space();
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
    }
    return result;
  }

 private:
  PhaseExpression term() {
    Rational coeff = 1;
    Exponents exps;
    bool divide = false;
    while (true) {
      skip_space();
      if (at_end()) fail("unexpected end of input");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const Rational n = number();
        if (divide) {
          if (n == 0) fail("division by zero");
          coeff /= n;
        } else {
          coeff *= n;
        }
      } else {
        if (divide) fail("only numeric divisors are supported");
        factor(exps);
      }
      skip_space();
      if (at_end() || (peek() != '*' && peek() != '/')) break;
      divide = get() == '/';
    }
    return PhaseExpression::monomial(coeff, exps);
  }

  void factor(Exponents& exps) {
    const std::size_t start = m_pos;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++m_pos;
    const std::string_view name = m_text.substr(start, m_pos - start);
    int power = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      ++m_pos;
      skip_space();
      bool neg = false;
      if (!at_end() && peek() == '-') {
        neg = true;
        ++m_pos;
      }
      const std::size_t digits = m_pos;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++m_pos;
      if (digits == m_pos) fail("expected integer exponent");
      power = std::stoi(std::string(m_text.substr(digits, m_pos - digits)));
      if (neg) power = -power;
    }
    int* slot = nullptr;
    if (name == "x1") slot = &exps.x1;
    else if (name == "x2") slot = &exps.x2;
    else if (name == "p1") slot = &exps.p1;
    else if (name == "p2") slot = &exps.p2;
    else if (name == "r2") slot = &exps.r2;
    else fail("unknown symbol '" + std::string(name) + "'");
    if (power < 0 && slot != &exps.r2) fail("negative exponent on " + std::string(name));
    *slot += power;
  }

  Rational number() {
    const std::size_t start = m_pos;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++m_pos;
    std::string digits(m_text.substr(start, m_pos - start));
    mpz_class denom = 1;
    if (!at_end() && peek() == '.') {
      ++m_pos;
      const std::size_t frac = m_pos;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++m_pos;
      digits += m_text.substr(frac, m_pos - frac);
      for (std::size_t i = frac; i < m_pos; ++i) denom *= 10;
    }
    Rational q{mpz_class(digits, 10), denom};
    q.canonicalize();
    return q;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++m_pos;
  }
  bool at_end() const { return m_pos >= m_text.size(); }
  char peek() const { return m_text[m_pos]; }
  char get() { return m_text[m_pos++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression parse error at offset " + std::to_string(m_pos) + ": " + msg);
  }

  std::string_view m_text;
  std::size_t m_pos = 0;
};

}  // namespace

PhaseExpression parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace fracam
