#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace fieldspec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense polynomial with exact rational coefficients, ascending powers.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(int power) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;

  RationalPolynomial& operator+=(const RationalPolynomial& other);
  RationalPolynomial& operator*=(const Rational& scale);
  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

  // e.g. "N^3 + 3*N^2 + 3*N + 1"
  std::string to_string(const std::string& var = "N") const;

  // Unique polynomial of degree < values.size() through (i, values[i]),
  // i = 0, 1, ..., via Newton forward differences.
  static RationalPolynomial interpolate_at_naturals(const std::vector<BigInt>& values);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace fieldspec
