#pragma once

#include <limits>

namespace chord {

/// A real number held as sign * exp(log_abs).
struct LogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogValue zero() { return {}; }
  static LogValue from_log(double log_abs, int sign = 1) { return {log_abs, sign}; }
  static LogValue from_double(double x);

  bool is_zero() const { return sign == 0; }
  /// exp(log_abs) with sign; overflows to +-inf for huge magnitudes.
  double to_double() const;

  friend LogValue operator*(LogValue a, LogValue b);
  friend LogValue operator+(LogValue a, LogValue b);
};

/// log(m!) through lgamma.
double log_factorial(double m);

/// log((2m-1)!!) for odd argument 2m-1 >= -1, via (2m)! / (2^m m!).
double log_odd_double_factorial(int odd);

/// Model approximation to N_{q,b}(n): the full double sum over would-be short
/// chords p and free bridge endpoints b0, and the simplified leading form.
/// Outside the model's class (parity or range) both are zero and in_domain
/// is false.
struct NqbModel {
  LogValue full;
  LogValue leading;
  bool in_domain = false;
};

NqbModel model_nqb(int n, int q, int b);

/// q (2(n-1) - q) / (2(n-1)); requires n >= 2 and 1 <= q <= 2n.
double mean_bridges(int n, int q);
/// Large-n limit q (2n - q) / (2n).
double mean_bridges_limit(int n, int q);
/// q^2 (2(n-1) - q)^2 / (4 (n-1)^3).
double var_bridges(int n, int q);

struct BridgeMoments {
  int n = 0;
  int q = 0;
  double mean = 0;
  double variance = 0;
};

/// Requires 1 <= q <= 2(n-1), where the mean formula is nonnegative.
BridgeMoments bridge_moments(int n, int q);

/// Log of the large-n form of R_{n,k}; requires 1 <= k < n.
LogValue log_rnk_asympt(int n, int k);

struct ShortChordMoments {
  int n = 0;
  double kbar_leading = 0;  // sqrt(2n / log n)
  double kbar_refined = 0;  // sqrt(2n / log(n/pi)) - 1/2 - 1/(2 log(n/pi))
  double variance = 0;      // kbar_refined^3 / (2n)
  double qbar = 0;          // 2n / kbar_leading
};

/// Requires n >= 4 so that log(n/pi) > 0.
ShortChordMoments short_chord_moments(int n);

/// Log of the large-n form of C_{n,k,q}; requires k >= 2, q >= 0, n > k + q.
LogValue log_cnkq_asympt(int n, int k, int q);

}  // namespace chord
