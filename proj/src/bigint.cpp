#include "chord/bigint.hpp"

#include <stdexcept>

namespace chord {

FactorialTable::FactorialTable(int limit) {
  if (limit < 0) throw std::invalid_argument("factorial table limit must be nonnegative");
  values_.reserve(static_cast<std::size_t>(limit) + 1);
  values_.emplace_back(1);
  for (int m = 1; m <= limit; ++m) values_.push_back(values_.back() * m);
}

BigInt factorial(int m) {
  if (m < 0) throw std::invalid_argument("factorial of negative integer");
  BigInt r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

BigInt double_factorial(int m) {
  if (m < -1) return 0;
  BigInt r = 1;
  for (int i = m; i > 1; i -= 2) r *= i;
  return r;
}

BigInt binomial(int m, int r) {
  if (r < 0 || m < 0 || r > m) return 0;
  if (r > m - r) r = m - r;
  BigInt out = 1;
  for (int i = 1; i <= r; ++i) {
    out *= m - r + i;
    out /= i;
  }
  return out;
}

BigInt falling_factorial(int m, int r) {
  if (r < 0) throw std::invalid_argument("falling factorial with negative length");
  BigInt out = 1;
  for (int i = 0; i < r; ++i) out *= m - i;
  return out;
}

std::string to_decimal(const BigInt& v) { return v.str(); }

std::string to_decimal(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

}  // namespace chord
