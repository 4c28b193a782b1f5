#pragma once

#include "chord/bigint.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chord {

enum class TableKind { NQB, SHORT, RNK, CNKQ, BUBSIZE };

std::string to_string(TableKind kind);

/// Dense table of exact counts. Row/column offsets record the first index of
/// each axis:
///   NQB     q in [1, 2n]  x  b in [0, n-1]
///   SHORT   k in [0, n]
///   RNK     k in [1, n]
///   CNKQ    k in [1, n]   x  q in [0, 2n]
///   BUBSIZE q in [1, 2n]
struct CountTable {
  TableKind kind{};
  int n = 0;
  int row_offset = 0;
  int rows = 0;
  int col_offset = 0;
  int cols = 1;
  std::vector<BigInt> entries;

  static CountTable make(TableKind kind, int n);

  BigInt& at(int row, int col = 0);
  const BigInt& at(int row, int col = 0) const;
  int row_end() const { return row_offset + rows; }  // one past the last row index
  int col_end() const { return col_offset + cols; }
};

/// Every brute-force table for one n, from a single pass over all diagrams.
struct CensusTables {
  int n = 0;
  BigInt diagrams;
  CountTable nqb, shorts, rnk, cnkq, bubsize;
};

/// Exhaustive census. The stream is partitioned by the partner of vertex 1
/// and per-partition tables are merged by addition, so the result does not
/// depend on `threads` (0 = hardware concurrency).
CensusTables run_census(int n, unsigned threads = 0);

CountTable count_nqb(int n, unsigned threads = 0);
CountTable count_short_distribution(int n, unsigned threads = 0);
CountTable count_rnk_bruteforce(int n, unsigned threads = 0);
CountTable count_cnkq_bruteforce(int n, unsigned threads = 0);
CountTable bubble_size_totals(int n, unsigned threads = 0);

/// Bridge statistics over the population of all bubbles of size q seen in
/// sampled diagrams. Variance is the unbiased sample variance over bubbles;
/// standard_error = sqrt(var / bubbles).
struct McEstimate {
  int n = 0;
  int q = 0;
  std::uint64_t samples = 0;  // diagrams drawn
  std::uint64_t bubbles = 0;  // bubbles of size q observed
  double mean_bridges = 0;
  double var_bridges = 0;
  double standard_error = 0;
  double variance_standard_error = 0;
};

inline constexpr std::uint64_t kMinMcSamples = 10'000;

/// Estimates for every q in [1, 2n]; entry q-1 is empty when no bubble of
/// size q was observed. Deterministic for a given (n, samples, seed) and
/// independent of `threads`.
std::vector<std::optional<McEstimate>> mc_bridge_profile(int n, std::uint64_t samples, std::uint64_t seed,
                                                         unsigned threads = 0);

/// Single-q form of mc_bridge_profile. Throws std::invalid_argument when
/// samples < kMinMcSamples; returns nullopt when no bubble of size q appeared.
std::optional<McEstimate> mc_bridge_stats(int n, int q, std::uint64_t samples, std::uint64_t seed,
                                          unsigned threads = 0);

}  // namespace chord
