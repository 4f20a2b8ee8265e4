#include "fieldspec/rational.hpp"

#include <sstream>

namespace fieldspec {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(int power) const {
  if (power < 0 || power > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(power)];
}

Rational RationalPolynomial::leading() const {
  return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + to_double(*it);
  }
  return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) c *= scale;
  trim();
  return *this;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int p = degree(); p >= 0; --p) {
    Rational c = coeffs_[static_cast<std::size_t>(p)];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = c == 1;
    if (!unit || p == 0) out << fieldspec::to_string(c);
    if (p > 0) {
      if (!unit) out << "*";
      out << var;
      if (p > 1) out << "^" << p;
    }
  }
  return out.str();
}

RationalPolynomial RationalPolynomial::interpolate_at_naturals(
    const std::vector<BigInt>& values) {
  // f(N) = sum_j Delta^j f(0) * binom(N, j).
  std::vector<BigInt> diff(values);
  std::vector<BigInt> forward;
  for (std::size_t j = 0; j < values.size(); ++j) {
    forward.push_back(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  std::vector<Rational> result(values.size(), Rational(0));
  std::vector<Rational> falling{Rational(1)};  // N(N-1)...(N-j+1), ascending powers
  BigInt factorial = 1;
  for (std::size_t j = 0; j < forward.size(); ++j) {
    if (j > 0) {
      factorial *= j;
      std::vector<Rational> next(falling.size() + 1, Rational(0));
      const Rational shift(static_cast<long long>(j - 1));
      for (std::size_t i = 0; i < falling.size(); ++i) {
        next[i + 1] += falling[i];
        next[i] -= shift * falling[i];
      }
      falling = std::move(next);
    }
    const Rational scale = Rational(forward[j]) / Rational(factorial);
    for (std::size_t i = 0; i < falling.size(); ++i) result[i] += scale * falling[i];
  }
  return RationalPolynomial(std::move(result));
}

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) {
    out << "/" << boost::multiprecision::denominator(q);
  }
  return out.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace fieldspec
