#include "dichot/polynomial.hpp"

#include <ostream>
#include <sstream>

#include "dichot/errors.hpp"

namespace dichot {

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients)
    coeffs_.emplace_back(c);
  trim();
}

IntegerPolynomial IntegerPolynomial::one_plus_power(std::size_t d) {
  IntegerPolynomial p = one();
  return p.mul_one_plus_power(d);
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

IntegerPolynomial &IntegerPolynomial::operator+=(const IntegerPolynomial &other) {
  if (coeffs_.size() < other.coeffs_.size())
    coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

IntegerPolynomial &IntegerPolynomial::operator*=(const mpz_class &scalar) {
  for (auto &c : coeffs_)
    c *= scalar;
  trim();
  return *this;
}

IntegerPolynomial &IntegerPolynomial::mul_one_plus_power(std::size_t d) {
  if (coeffs_.empty())
    return *this;
  if (d == 0)
    return *this *= 2;
  const std::size_t old = coeffs_.size();
  coeffs_.resize(old + d);
  for (std::size_t i = old; i-- > 0;)
    coeffs_[i + d] += coeffs_[i];
  return *this;
}

IntegerPolynomial IntegerPolynomial::divided_exactly(const mpz_class &divisor) const {
  if (divisor == 0)
    throw ConsistencyError("polynomial division by zero");
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), divisor.get_mpz_t())) {
      std::ostringstream msg;
      msg << "coefficient of x^" << i << " (" << coeffs_[i] << ") is not divisible by "
          << divisor;
      throw ConsistencyError(msg.str());
    }
    mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), divisor.get_mpz_t());
  }
  return IntegerPolynomial(std::move(out));
}

mpz_class IntegerPolynomial::evaluate(const mpz_class &x) const {
  mpz_class acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    acc = acc * x + coeffs_[i];
  return acc;
}

mpz_class IntegerPolynomial::at_minus_one() const {
  mpz_class acc = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i % 2 == 0)
      acc += coeffs_[i];
    else
      acc -= coeffs_[i];
  }
  return acc;
}

bool IntegerPolynomial::is_palindromic(std::size_t n) const {
  if (degree() > static_cast<long>(n))
    return false;
  for (std::size_t d = 0; d <= n; ++d)
    if (coefficient(d) != coefficient(n - d))
      return false;
  return true;
}

IntegerPolynomial operator*(const IntegerPolynomial &a, const IntegerPolynomial &b) {
  if (a.is_zero() || b.is_zero())
    return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntegerPolynomial(std::move(out));
}

std::ostream &operator<<(std::ostream &os, const IntegerPolynomial &p) {
  bool first = true;
  for (std::size_t d = 0; d < p.coefficients().size(); ++d) {
    const mpz_class &c = p.coefficients()[d];
    if (c == 0)
      continue;
    if (!first)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << '-';
    const mpz_class mag = abs(c);
    if (mag != 1 || d == 0)
      os << mag;
    if (d > 0)
      os << (mag != 1 ? " " : "") << 'x' << (d > 1 ? "^" + std::to_string(d) : "");
    first = false;
  }
  if (first)
    os << '0';
  return os;
}

} // namespace dichot
