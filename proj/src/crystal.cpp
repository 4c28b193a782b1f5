#include "chord/crystal.hpp"

#include "chord/errors.hpp"
#include "chord/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chord {

std::vector<std::pair<int, int>> complete_graph_edges(int k) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(k * (k + 1) / 2));
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) edges.emplace_back(i, j);
  return edges;
}

EdgeWeighting EdgeWeighting::from_edges(int k, std::vector<int> p) {
  const auto edges = complete_graph_edges(k);
  if (p.size() != edges.size()) throw std::invalid_argument("edge weighting has the wrong length");
  EdgeWeighting out;
  out.k = k;
  out.w.assign(static_cast<std::size_t>(k + 1), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (p[e] < 0) throw std::invalid_argument("negative bridge multiplicity");
    out.w[static_cast<std::size_t>(edges[e].first)] += p[e];
    out.w[static_cast<std::size_t>(edges[e].second)] += p[e];
  }
  out.p = std::move(p);
  return out;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Weak compositions of `total` into `parts` parts in colex order, changing at
// most three entries per step (Nijenhuis-Wilf NEXCOM). on_change(i, delta)
// reports each entry update; visit() is called once per composition.
template <class OnChange, class Visit>
void for_each_composition(int total, int parts, OnChange&& on_change, Visit&& visit) {
  if (parts == 0) {
    if (total == 0) visit();
    return;
  }
  std::vector<int> r(static_cast<std::size_t>(parts), 0);
  r[0] = total;
  on_change(0, total);
  visit();
  if (parts == 1) return;
  int t = total;
  int h = -1;
  while (r[static_cast<std::size_t>(parts - 1)] != total) {
    if (t > 1) h = -1;
    ++h;
    t = r[static_cast<std::size_t>(h)];
    r[static_cast<std::size_t>(h)] = 0;
    on_change(h, -t);
    const int old_first = r[0];
    r[0] = t - 1;
    on_change(0, t - 1 - old_first);
    r[static_cast<std::size_t>(h + 1)] += 1;
    on_change(h + 1, 1);
    visit();
  }
}

double composition_count(int total, int parts) {
  if (parts == 0) return total == 0 ? 1.0 : 0.0;
  return std::exp(std::lgamma(total + parts) - std::lgamma(total + 1.0) - std::lgamma(static_cast<double>(parts)));
}

}  // namespace

BigInt psi(int N, int k, unsigned threads) {
  require(N >= 0 && k >= 0, "psi needs N >= 0 and k >= 0");
  if (k == 0) return N == 0 ? 1 : 0;
  if (N == 0) return 1;
  const auto edges = complete_graph_edges(k);
  const int E = static_cast<int>(edges.size());
  if (composition_count(N, E) > kCompositionCap)
    throw CapacityError("psi(" + std::to_string(N) + ", " + std::to_string(k) + ") has too many compositions");

  const FactorialTable fact(N);
  std::vector<BigInt> partial(static_cast<std::size_t>(N + 1));
  // Outer split on p_1 (the edge (0,1)); the remaining E-1 edges are composed.
  parallel_for(static_cast<std::size_t>(N + 1), threads, [&](std::size_t first) {
    const int p1 = static_cast<int>(first);
    if (E == 1 && p1 != N) return;
    std::vector<int> p(static_cast<std::size_t>(E), 0);
    std::vector<int> w(static_cast<std::size_t>(k + 1), 0);
    p[0] = p1;
    w[0] += p1, w[1] += p1;
    BigInt sum = 0, numerator, denominator;
    auto on_change = [&](int i, int delta) {
      const auto [a, b] = edges[static_cast<std::size_t>(i + 1)];
      p[static_cast<std::size_t>(i + 1)] += delta;
      w[static_cast<std::size_t>(a)] += delta;
      w[static_cast<std::size_t>(b)] += delta;
    };
    auto visit = [&] {
      numerator = 1;
      denominator = 1;
      for (int x : w)
        if (x > 1) numerator *= fact(x);
      for (int x : p)
        if (x > 1) denominator *= fact(x);
      sum += numerator / denominator;
    };
    for_each_composition(N - p1, E - 1, on_change, visit);
    partial[first] = std::move(sum);
  });
  BigInt total = 0;
  for (const auto& s : partial) total += s;
  return total;
}

BigInt rnk_formula(int n, int k, unsigned threads) {
  require(k >= 1 && k <= n, "rnk needs 1 <= k <= n");
  return psi(n - k, k, threads);
}

namespace {

// (k+1) (2n-k-q-1)! / (2n-k-2q-1)! times the supplied psi factor.
BigInt cnkq_prefactor(int n, int k, int q) {
  return BigInt(k + 1) * falling_factorial(2 * n - k - q - 1, q);
}

void require_cnkq_domain(int n, int k, int q) {
  require(k >= 1 && k <= n, "cnkq needs 1 <= k <= n");
  require(q >= 0, "cnkq needs q >= 0");
}

}  // namespace

BigInt cnkq_formula(int n, int k, int q, unsigned threads) {
  require_cnkq_domain(n, k, q);
  if (n - k - q < 0) return 0;
  return cnkq_prefactor(n, k, q) * psi(n - k - q, k - 1, threads);
}

bool remark_identity_check(int n, int k, unsigned threads) {
  require(k >= 1 && k <= n, "zero-gap identity needs 1 <= k <= n");
  return BigInt(k + 2) * rnk_formula(n, k, threads) == cnkq_formula(n + 1, k + 1, 0, threads);
}

// --- scalable route --------------------------------------------------------

namespace {

void require_scalable(int n) {
  if (n > kScalableCap) throw CapacityError("scalable route is capped at n = " + std::to_string(kScalableCap));
}

// a_j = (-1)^j (2j-1)!!, j = 0..degree.
std::vector<BigInt> phi_coefficients(int degree) {
  std::vector<BigInt> a(static_cast<std::size_t>(degree + 1));
  a[0] = 1;
  for (int j = 1; j <= degree; ++j) a[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j - 1)] * -(2 * j - 1);
  return a;
}

std::vector<BigInt> multiply_truncated(const std::vector<BigInt>& x, const std::vector<BigInt>& y, int degree,
                                       unsigned threads) {
  std::vector<BigInt> out(static_cast<std::size_t>(degree + 1));
  const int dx = static_cast<int>(x.size()) - 1;
  const int dy = static_cast<int>(y.size()) - 1;
  parallel_for(out.size(), threads, [&](std::size_t idx) {
    const int J = static_cast<int>(idx);
    BigInt acc = 0;
    for (int i = std::max(0, J - dy); i <= std::min(J, dx); ++i)
      acc += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(J - i)];
    out[idx] = std::move(acc);
  });
  return out;
}

void truncate(std::vector<BigInt>& x, int degree) {
  if (static_cast<int>(x.size()) > degree + 1) x.resize(static_cast<std::size_t>(degree + 1));
}

// sum_J c_J C(2n-k, V-2J) (V-2J-1)!!, V = 2(n-k).
BigInt assemble(int n, int k, const std::vector<BigInt>& c) {
  const int V = 2 * (n - k);
  BigInt total = 0;
  // (S-1)!! for S = V - 2J, built upward from S = 0.
  BigInt odd = 1;
  for (int J = n - k; J >= 0; --J) {
    const int S = V - 2 * J;
    if (S >= 2) odd *= S - 1;
    if (J < static_cast<int>(c.size())) total += c[static_cast<std::size_t>(J)] * binomial(2 * n - k, S) * odd;
  }
  return total;
}

}  // namespace

BigInt rnk_scalable(int n, int k, unsigned threads) {
  require(k >= 1 && k <= n, "rnk needs 1 <= k <= n");
  require_scalable(n);
  const int degree = n - k;
  // phi^{k+1} by binary powering.
  std::vector<BigInt> base = phi_coefficients(degree);
  std::vector<BigInt> power{BigInt(1)};
  for (int e = k + 1;;) {
    if (e & 1) power = multiply_truncated(power, base, degree, threads);
    e >>= 1;
    if (e == 0) break;
    base = multiply_truncated(base, base, degree, threads);
  }
  return assemble(n, k, power);
}

std::vector<BigInt> rnk_scalable_row(int n, int k_max, unsigned threads) {
  require(n >= 1 && k_max >= 1 && k_max <= n, "rnk row needs 1 <= k_max <= n");
  require_scalable(n);
  const std::vector<BigInt> phi = phi_coefficients(n - 1);
  std::vector<BigInt> power = phi;  // phi^1
  std::vector<BigInt> row;
  row.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    power = multiply_truncated(power, phi, n - k, threads);  // phi^{k+1}
    row.push_back(assemble(n, k, power));
    truncate(power, n - k - 1);
  }
  return row;
}

BigInt rnk_part_convolution(int n, int k) {
  require(k >= 1 && k <= n, "rnk needs 1 <= k <= n");
  const int V = 2 * (n - k);
  // g(w, s) = (-1)^j w! / (2^j j! s!) = (-1)^j C(w, 2j) (2j-1)!!, w = s + 2j.
  auto g = [](int w, int s) {
    const int j = (w - s) / 2;
    BigInt v = binomial(w, 2 * j) * double_factorial(2 * j - 1);
    return j % 2 == 0 ? v : BigInt(-v);
  };
  const auto stride = static_cast<std::size_t>(V + 1);
  auto idx = [&](int W, int S) { return static_cast<std::size_t>(W) * stride + static_cast<std::size_t>(S); };
  std::vector<BigInt> kernel(stride * stride, BigInt(0));
  for (int w = 0; w <= V; ++w)
    for (int s = w % 2; s <= w; s += 2) kernel[idx(w, s)] = g(w, s);

  std::vector<BigInt> state(stride * stride, BigInt(0));
  state[idx(0, 0)] = 1;
  for (int part = 0; part <= k; ++part) {
    std::vector<BigInt> next(stride * stride, BigInt(0));
    for (int W = 0; W <= V; ++W)
      for (int S = 0; S <= W; ++S) {
        const BigInt& here = state[idx(W, S)];
        if (here == 0) continue;
        for (int w = 0; W + w <= V; ++w)
          for (int s = w % 2; s <= w; s += 2) next[idx(W + w, S + s)] += here * kernel[idx(w, s)];
      }
    state = std::move(next);
  }
  BigInt total = 0;
  for (int S = 0; S <= V; S += 2) total += state[idx(V, S)] * double_factorial(S - 1);
  return total;
}

BigInt psi_scalable(int N, int k, unsigned threads) {
  require(N >= 0 && k >= 0, "psi needs N >= 0 and k >= 0");
  if (k == 0) return N == 0 ? 1 : 0;
  return rnk_scalable(N + k, k, threads);
}

BigInt cnkq_scalable(int n, int k, int q, unsigned threads) {
  require_cnkq_domain(n, k, q);
  if (n - k - q < 0) return 0;
  return cnkq_prefactor(n, k, q) * psi_scalable(n - k - q, k - 1, threads);
}

KMoments exact_k_moments(int n, unsigned threads) {
  require(n >= 1, "moments need n >= 1");
  if (n > kMomentsCap) throw CapacityError("exact k moments are capped at n = " + std::to_string(kMomentsCap));
  const auto row = rnk_scalable_row(n, n, threads);
  BigInt total = 0, first = 0, second = 0;
  for (int k = 1; k <= n; ++k) {
    const BigInt& r = row[static_cast<std::size_t>(k - 1)];
    total += r;
    first += r * k;
    second += r * k * k;
  }
  KMoments m;
  m.mean = Rational(first, total);
  m.variance = Rational(second, total) - m.mean * m.mean;
  return m;
}

}  // namespace chord
