#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace chord {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Factorials 0!..limit! computed once and shared read-only afterwards.
class FactorialTable {
 public:
  explicit FactorialTable(int limit);

  const BigInt& operator()(int m) const { return values_.at(static_cast<std::size_t>(m)); }
  int limit() const { return static_cast<int>(values_.size()) - 1; }

 private:
  std::vector<BigInt> values_;
};

BigInt factorial(int m);

/// (m)!! for odd or even m; (-1)!! = 0!! = 1. Negative m below -1 is zero.
BigInt double_factorial(int m);

/// Binomial coefficient; zero outside 0 <= r <= m.
BigInt binomial(int m, int r);

/// Falling factorial m (m-1) ... (m-r+1).
BigInt falling_factorial(int m, int r);

std::string to_decimal(const BigInt& v);
std::string to_decimal(const Rational& v);

/// Nearest double; exact for values representable, correctly rounded otherwise.
double to_double(const Rational& v);

}  // namespace chord
