#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace steiner {

using Integer = mpz_class;
using Rational = mpq_class;

namespace polycert {

/// Dense univariate polynomial in q with exact rational coefficients.
///
/// coeffs()[i] is the coefficient of q^i. Trailing zeros are trimmed at
/// construction, so a nonzero polynomial always has a nonzero leading
/// coefficient and the zero polynomial has an empty coefficient list.
/// Values are immutable; every operation returns a new polynomial.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, std::size_t degree);
  /// The indeterminate q.
  static QPoly indeterminate();

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of q^i; zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  bool has_integer_coeffs() const noexcept { return denominator_lcm_ == 1; }
  /// Least common multiple of all coefficient denominators (1 for zero).
  const Integer& denominator_lcm() const noexcept { return denominator_lcm_; }
  /// Coefficients multiplied by denominator_lcm(); all integral.
  const std::vector<Integer>& cleared_coeffs() const noexcept { return cleared_; }

  QPoly pow(unsigned exponent) const;
  QPoly operator-() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& c, const QPoly& p);
  friend bool operator==(const QPoly& a, const QPoly& b);

 private:
  void canonicalize();

  std::vector<Rational> coeffs_;
  std::vector<Integer> cleared_;
  Integer denominator_lcm_ = 1;
};

struct DivMod {
  QPoly quotient;
  QPoly remainder;
};

/// Euclidean division over Q. Throws PreconditionError when b is zero.
DivMod divmod(const QPoly& a, const QPoly& b);

/// Parses the factored-expression grammar
///   expr ::= ["-"] term (("+"|"-") term)*
///   term ::= pow ("*" pow)*
///   pow  ::= atom ("^" integer)?
///   atom ::= integer | "q" | "(" expr ")"
/// and returns the expanded polynomial. Throws ParseError with the 0-based
/// offset of the offending character.
QPoly poly_parse(std::string_view expr);

/// Canonical expanded form, highest degree first, e.g. "q^5 - q^4 + 3*q - 2".
/// For integer-coefficient polynomials poly_parse(poly_print(p)) == p.
std::string poly_print(const QPoly& p);

/// Exact Horner evaluation at an integer point.
Rational poly_eval(const QPoly& p, const Integer& x);

/// Evaluation that must land on an integer; throws PreconditionError if not.
Integer poly_eval_integer(const QPoly& p, const Integer& x);

/// ceil(1 + max |c_i / c_lead|): every real root has absolute value below it.
Integer poly_cauchy_root_bound(const QPoly& p);

/// Sturm chain p, p', -rem(p, p'), ... ending at a nonzero constant multiple
/// of gcd(p, p').
std::vector<QPoly> sturm_sequence(const QPoly& p);

/// Number of distinct real roots of p in the open ray (x, +inf).
/// Precondition: p(x) != 0.
std::size_t count_roots_above(const std::vector<QPoly>& sturm, const Integer& x);

}  // namespace polycert
}  // namespace steiner
