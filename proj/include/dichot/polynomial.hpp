#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

namespace dichot {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// coefficient(d) is the coefficient of x^d; trailing zeros are trimmed.
class IntegerPolynomial {
public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<mpz_class> coefficients);
  IntegerPolynomial(std::initializer_list<long> coefficients);

  static IntegerPolynomial one() { return IntegerPolynomial{1}; }
  /// 1 + x^d
  static IntegerPolynomial one_plus_power(std::size_t d);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  mpz_class coefficient(std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : 0; }
  const std::vector<mpz_class> &coefficients() const noexcept { return coeffs_; }

  IntegerPolynomial &operator+=(const IntegerPolynomial &other);
  IntegerPolynomial &operator*=(const mpz_class &scalar);
  /// Multiplies in place by (1 + x^d).
  IntegerPolynomial &mul_one_plus_power(std::size_t d);
  /// Coefficient-wise exact division; throws ConsistencyError on a remainder.
  IntegerPolynomial divided_exactly(const mpz_class &divisor) const;

  mpz_class evaluate(const mpz_class &x) const;
  /// Alternating coefficient sum, p(-1).
  mpz_class at_minus_one() const;
  /// coefficient(d) == coefficient(n - d) for all d in [0, n].
  bool is_palindromic(std::size_t n) const;

  friend bool operator==(const IntegerPolynomial &, const IntegerPolynomial &) = default;
  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial &b) {
    return a += b;
  }
  friend IntegerPolynomial operator*(const IntegerPolynomial &a, const IntegerPolynomial &b);

private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Prints "c0 + c1 x + ...", skipping zero terms.
std::ostream &operator<<(std::ostream &os, const IntegerPolynomial &p);

} // namespace dichot
