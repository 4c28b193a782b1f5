#include "chord/census.hpp"

#include "chord/diagram.hpp"
#include "chord/errors.hpp"
#include "chord/parallel.hpp"
#include "chord/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace chord {

std::string to_string(TableKind kind) {
  switch (kind) {
    case TableKind::NQB: return "nqb";
    case TableKind::SHORT: return "short";
    case TableKind::RNK: return "rnk";
    case TableKind::CNKQ: return "cnkq";
    case TableKind::BUBSIZE: return "bubsize";
  }
  return "unknown";
}

CountTable CountTable::make(TableKind kind, int n) {
  CountTable t;
  t.kind = kind;
  t.n = n;
  switch (kind) {
    case TableKind::NQB:
      t.row_offset = 1, t.rows = 2 * n, t.col_offset = 0, t.cols = n;
      break;
    case TableKind::SHORT:
      t.row_offset = 0, t.rows = n + 1;
      break;
    case TableKind::RNK:
      t.row_offset = 1, t.rows = n;
      break;
    case TableKind::CNKQ:
      t.row_offset = 1, t.rows = n, t.col_offset = 0, t.cols = 2 * n + 1;
      break;
    case TableKind::BUBSIZE:
      t.row_offset = 1, t.rows = 2 * n;
      break;
  }
  t.entries.assign(static_cast<std::size_t>(t.rows) * static_cast<std::size_t>(t.cols), BigInt(0));
  return t;
}

BigInt& CountTable::at(int row, int col) {
  return const_cast<BigInt&>(static_cast<const CountTable&>(*this).at(row, col));
}

const BigInt& CountTable::at(int row, int col) const {
  int r = row - row_offset;
  int c = col - col_offset;
  if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("count table index out of range");
  return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
}

namespace {

// Per-partition accumulator. Counts stay below (2n-1)!! * 2n, which fits in
// 64 bits for every n within kEnumerationCap.
struct Tally {
  explicit Tally(int n)
      : n(n),
        nqb(static_cast<std::size_t>(2 * n * n), 0),
        shorts(static_cast<std::size_t>(n + 1), 0),
        rnk(static_cast<std::size_t>(n + 1), 0),
        cnkq(static_cast<std::size_t>((n + 1) * (2 * n + 1)), 0),
        bubsize(static_cast<std::size_t>(2 * n + 1), 0) {}

  int n;
  std::uint64_t diagrams = 0;
  std::vector<std::uint64_t> nqb;      // (q-1)*n + b
  std::vector<std::uint64_t> shorts;   // k
  std::vector<std::uint64_t> rnk;      // k
  std::vector<std::uint64_t> cnkq;     // k*(2n+1) + q
  std::vector<std::uint64_t> bubsize;  // q

  void add(const Diagram& d) {
    ++diagrams;
    const auto decomposition = bubbles(d);
    const int k = static_cast<int>(decomposition.short_chord_positions.size());
    ++shorts[static_cast<std::size_t>(k)];
    bool crystallized = true;
    for (const Bubble& b : decomposition.bubbles) {
      ++nqb[static_cast<std::size_t>((b.size - 1) * n + b.bridges)];
      ++bubsize[static_cast<std::size_t>(b.size)];
      crystallized = crystallized && b.bridges == b.size;
    }
    if (!crystallized) return;
    ++rnk[static_cast<std::size_t>(k)];
    const std::size_t row = static_cast<std::size_t>(k) * static_cast<std::size_t>(2 * n + 1);
    cnkq[row] += static_cast<std::uint64_t>(zero_gaps(d));
    for (const Bubble& b : decomposition.bubbles) ++cnkq[row + static_cast<std::size_t>(b.size)];
  }
};

}  // namespace

CensusTables run_census(int n, unsigned threads) {
  if (n < 1) throw std::invalid_argument("census needs n >= 1");
  if (n > kEnumerationCap) throw CapacityError("census is capped at n = " + std::to_string(kEnumerationCap));

  // n = 1 has a single partition (partner of vertex 1 is 2).
  const std::size_t partitions = static_cast<std::size_t>(2 * n - 1);
  std::vector<Tally> parts(partitions, Tally(n));
  parallel_for(partitions, threads, [&](std::size_t i) {
    DiagramEnumerator stream(n, static_cast<int>(i) + 2);
    while (const Diagram* d = stream.next()) parts[i].add(*d);
  });

  CensusTables out;
  out.n = n;
  out.nqb = CountTable::make(TableKind::NQB, n);
  out.shorts = CountTable::make(TableKind::SHORT, n);
  out.rnk = CountTable::make(TableKind::RNK, n);
  out.cnkq = CountTable::make(TableKind::CNKQ, n);
  out.bubsize = CountTable::make(TableKind::BUBSIZE, n);
  for (const Tally& t : parts) {
    out.diagrams += t.diagrams;
    for (int q = 1; q <= 2 * n; ++q) {
      out.bubsize.at(q) += t.bubsize[static_cast<std::size_t>(q)];
      for (int b = 0; b < n; ++b) out.nqb.at(q, b) += t.nqb[static_cast<std::size_t>((q - 1) * n + b)];
    }
    for (int k = 0; k <= n; ++k) out.shorts.at(k) += t.shorts[static_cast<std::size_t>(k)];
    for (int k = 1; k <= n; ++k) {
      out.rnk.at(k) += t.rnk[static_cast<std::size_t>(k)];
      for (int q = 0; q <= 2 * n; ++q)
        out.cnkq.at(k, q) += t.cnkq[static_cast<std::size_t>(k * (2 * n + 1) + q)];
    }
  }
  return out;
}

CountTable count_nqb(int n, unsigned threads) { return run_census(n, threads).nqb; }
CountTable count_short_distribution(int n, unsigned threads) { return run_census(n, threads).shorts; }
CountTable count_rnk_bruteforce(int n, unsigned threads) { return run_census(n, threads).rnk; }
CountTable count_cnkq_bruteforce(int n, unsigned threads) { return run_census(n, threads).cnkq; }
CountTable bubble_size_totals(int n, unsigned threads) { return run_census(n, threads).bubsize; }

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kMcChunk = 1 << 14;

struct Moments {
  std::uint64_t count = 0;
  unsigned __int128 s1 = 0, s2 = 0, s3 = 0, s4 = 0;

  void add(std::uint64_t b) {
    unsigned __int128 x = b;
    ++count;
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  void merge(const Moments& o) {
    count += o.count;
    s1 += o.s1, s2 += o.s2, s3 += o.s3, s4 += o.s4;
  }
};

McEstimate summarize(int n, int q, std::uint64_t samples, const Moments& m) {
  McEstimate e;
  e.n = n, e.q = q, e.samples = samples, e.bubbles = m.count;
  const auto c = static_cast<long double>(m.count);
  const long double mean = static_cast<long double>(m.s1) / c;
  const long double r2 = static_cast<long double>(m.s2) / c;
  const long double r3 = static_cast<long double>(m.s3) / c;
  const long double r4 = static_cast<long double>(m.s4) / c;
  const long double central2 = r2 - mean * mean;
  const long double central4 = r4 - 4 * mean * r3 + 6 * mean * mean * r2 - 3 * mean * mean * mean * mean;
  e.mean_bridges = static_cast<double>(mean);
  if (m.count > 1) {
    const long double var = central2 * c / (c - 1);
    e.var_bridges = static_cast<double>(var);
    e.standard_error = static_cast<double>(std::sqrt(var / c));
    // Var(s^2) = (mu4 - (N-3)/(N-1) sigma^4) / N, with sample moments plugged in.
    long double v4 = (central4 - (c - 3) / (c - 1) * var * var) / c;
    e.variance_standard_error = static_cast<double>(std::sqrt(v4 > 0 ? v4 : 0));
  }
  return e;
}

}  // namespace

std::vector<std::optional<McEstimate>> mc_bridge_profile(int n, std::uint64_t samples, std::uint64_t seed,
                                                         unsigned threads) {
  if (n < 1) throw std::invalid_argument("Monte Carlo needs n >= 1");
  if (samples < kMinMcSamples) throw std::invalid_argument("Monte Carlo needs at least 10^4 samples");

  const std::uint64_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<std::vector<Moments>> per_chunk(chunks);
  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    std::vector<Moments> acc(static_cast<std::size_t>(2 * n + 1));
    Rng rng = make_rng(seed, c);
    const std::uint64_t begin = c * kMcChunk;
    const std::uint64_t end = std::min(samples, begin + kMcChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      const Diagram d = sample_uniform(n, rng);
      for (const Bubble& b : bubbles(d).bubbles)
        acc[static_cast<std::size_t>(b.size)].add(static_cast<std::uint64_t>(b.bridges));
    }
    per_chunk[c] = std::move(acc);
  });

  std::vector<Moments> total(static_cast<std::size_t>(2 * n + 1));
  for (const auto& acc : per_chunk)
    for (std::size_t q = 0; q < total.size(); ++q) total[q].merge(acc[q]);

  std::vector<std::optional<McEstimate>> out(static_cast<std::size_t>(2 * n));
  for (int q = 1; q <= 2 * n; ++q) {
    const Moments& m = total[static_cast<std::size_t>(q)];
    if (m.count > 0) out[static_cast<std::size_t>(q - 1)] = summarize(n, q, samples, m);
  }
  return out;
}

std::optional<McEstimate> mc_bridge_stats(int n, int q, std::uint64_t samples, std::uint64_t seed,
                                          unsigned threads) {
  if (q < 1 || q > 2 * n) throw std::invalid_argument("bubble size must lie in [1, 2n]");
  return mc_bridge_profile(n, samples, seed, threads)[static_cast<std::size_t>(q - 1)];
}

}  // namespace chord
