#include "chord/asymptotics.hpp"

#include "chord/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace chord {

LogValue LogValue::from_double(double x) {
  if (x == 0) return zero();
  return {std::log(std::fabs(x)), x > 0 ? 1 : -1};
}

double LogValue::to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

LogValue operator*(LogValue a, LogValue b) {
  if (a.is_zero() || b.is_zero()) return LogValue::zero();
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

LogValue operator+(LogValue a, LogValue b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  const double ratio = std::exp(b.log_abs - a.log_abs);
  if (a.sign == b.sign) return {a.log_abs + std::log1p(ratio), a.sign};
  if (ratio == 1.0) return LogValue::zero();
  return {a.log_abs + std::log1p(-ratio), a.sign};
}

double log_factorial(double m) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(m + 1.0, &sign);
#else
  return std::lgamma(m + 1.0);
#endif
}

double log_odd_double_factorial(int odd) {
  if (odd < -1 || odd % 2 == 0) throw DomainError("double factorial argument must be odd and >= -1");
  const int m = (odd + 1) / 2;
  return log_factorial(2.0 * m) - m * std::numbers::ln2 - log_factorial(m);
}

namespace {

double log_binomial(int m, int r) { return log_factorial(m) - log_factorial(r) - log_factorial(m - r); }

// Ways to put `balls` identical balls into `bins` distinct bins.
LogValue balls_into_bins(int balls, int bins) {
  if (bins < 0 || balls < 0) return LogValue::zero();
  if (bins == 0) return balls == 0 ? LogValue::from_log(0) : LogValue::zero();
  return LogValue::from_log(log_binomial(balls + bins - 1, balls));
}

// Same, with no bin left empty.
LogValue balls_into_bins_nonempty(int balls, int bins) {
  if (bins < 0 || balls < bins) return LogValue::zero();
  if (bins == 0) return LogValue::from_log(0);
  return LogValue::from_log(log_binomial(balls - 1, bins - 1));
}

}  // namespace

NqbModel model_nqb(int n, int q, int b) {
  if (n < 1 || b < 0 || q < b || q > 2 * n) throw DomainError("model_nqb needs 0 <= b <= q <= 2n");
  NqbModel out;
  const int outside = 2 * (n - 1) - q;  // external vertices
  if ((q - b) % 2 != 0 || outside - b < 0) return out;
  out.in_domain = true;

  // 2 (outside)_b (outside - b - 1)!! (q - b - 1)!! / e
  const double log_prefix = std::numbers::ln2 + log_factorial(outside) - log_factorial(outside - b) +
                            log_odd_double_factorial(outside - b - 1) + log_odd_double_factorial(q - b - 1) - 1.0;
  LogValue sum = LogValue::zero();
  for (int p = 0; p <= b; ++p) {
    LogValue inner = LogValue::zero();
    for (int b0 = 0; b0 <= b - p; ++b0)
      inner = inner + balls_into_bins(b0, q - b - p + 1) * balls_into_bins_nonempty(b - b0, p);
    sum = sum + inner * LogValue::from_log(-log_factorial(p));
  }
  out.full = LogValue::from_log(log_prefix) * sum;

  const int half_out = n - 1 - (q + b) / 2;
  const int half_in = (q - b) / 2;
  out.leading = LogValue::from_log(-half_out * std::numbers::ln2 - log_factorial(half_out) + std::numbers::ln2 +
                                   log_factorial(outside) - half_in * std::numbers::ln2 - log_factorial(half_in) +
                                   log_factorial(q) - log_factorial(b));
  return out;
}

double mean_bridges(int n, int q) {
  if (n < 2 || q < 1 || q > 2 * n) throw DomainError("mean_bridges needs n >= 2 and 1 <= q <= 2n");
  const double m = 2.0 * (n - 1);
  return q * (m - q) / m;
}

double mean_bridges_limit(int n, int q) {
  if (n < 1 || q < 1 || q > 2 * n) throw DomainError("mean_bridges_limit needs 1 <= q <= 2n");
  return q * (2.0 * n - q) / (2.0 * n);
}

double var_bridges(int n, int q) {
  if (n < 2 || q < 0 || q > 2 * n) throw DomainError("var_bridges needs n >= 2 and 0 <= q <= 2n");
  const double m = 2.0 * (n - 1);
  const double nm1 = n - 1.0;
  return q * q * (m - q) * (m - q) / (4.0 * nm1 * nm1 * nm1);
}

BridgeMoments bridge_moments(int n, int q) {
  if (n < 2 || q < 1 || q > 2 * (n - 1)) throw DomainError("bridge moments need 1 <= q <= 2(n-1)");
  return {n, q, mean_bridges(n, q), var_bridges(n, q)};
}

LogValue log_rnk_asympt(int n, int k) {
  if (k < 1 || k >= n) throw DomainError("log_rnk_asympt needs 1 <= k < n");
  const double N = n, K = k;
  const double value = -0.5 * std::log(K + 1) + (N + 0.5) * std::numbers::ln2 + (K - N) +
                       (N - K / 2) * std::log(K) + (K / 2) * std::log(std::numbers::pi) +
                       (N - K / 2) * std::log((N - K) / (K + 1));
  return LogValue::from_log(value);
}

ShortChordMoments short_chord_moments(int n) {
  if (n < 4) throw DomainError("short_chord_moments needs n >= 4");
  ShortChordMoments m;
  m.n = n;
  const double N = n;
  const double log_scaled = std::log(N / std::numbers::pi);
  m.kbar_leading = std::sqrt(2 * N / std::log(N));
  m.kbar_refined = std::sqrt(2 * N / log_scaled) - 0.5 - 1 / (2 * log_scaled);
  m.variance = m.kbar_refined * m.kbar_refined * m.kbar_refined / (2 * N);
  m.qbar = 2 * N / m.kbar_leading;
  return m;
}

LogValue log_cnkq_asympt(int n, int k, int q) {
  if (k < 2 || q < 0 || n <= k + q) throw DomainError("log_cnkq_asympt needs k >= 2, q >= 0, n > k + q");
  const double N = n, K = k, Q = q;
  const double e1 = N - Q - (K + 1) / 2;
  const double value = -0.5 * std::log(K) + (N - Q - 0.5) * std::numbers::ln2 + (K - N) + e1 * std::log(K - 1) +
                       std::log(K + 1) + (K - 1) / 2 * std::log(std::numbers::pi) + e1 * std::log((N - K - Q) / K) +
                       (0.5 + K - 2 * N + 2 * Q) * std::log(2 * N - 2 * Q - K - 1) +
                       (-0.5 - K + 2 * N - Q) * std::log(2 * N - Q - K - 1);
  return LogValue::from_log(value);
}

}  // namespace chord
