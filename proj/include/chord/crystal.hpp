#pragma once

#include "chord/bigint.hpp"

#include <utility>
#include <vector>

namespace chord {

/// Edges of K_{k+1} in lexicographic order of (i, j), i < j, vertices 0..k.
std::vector<std::pair<int, int>> complete_graph_edges(int k);

/// Bridge multiplicities p on the edges of K_{k+1} and the implied bubble
/// sizes w = B p.
struct EdgeWeighting {
  int k = 0;
  std::vector<int> p;  // one entry per edge, lexicographic edge order
  std::vector<int> w;  // one entry per vertex

  static EdgeWeighting from_edges(int k, std::vector<int> p);
};

/// Largest number of compositions the direct sum is allowed to visit.
inline constexpr double kCompositionCap = 2e9;

/// Sum over compositions p of N into k(k+1)/2 parts of prod w_j! / prod p_i!.
/// psi(N, 0) = [N == 0]; psi(0, k) = 1. Throws CapacityError when the number
/// of compositions exceeds kCompositionCap. The sum is split by the first part
/// and merged by addition.
BigInt psi(int N, int k, unsigned threads = 1);

/// Crystallized diagrams with n chords of which k are short, via psi(n-k, k).
BigInt rnk_formula(int n, int k, unsigned threads = 1);

/// Bubbles of size q over crystallized diagrams with n chords and k short
/// chords. q = 0 counts empty gaps. Zero when n - k - q < 0.
BigInt cnkq_formula(int n, int k, int q, unsigned threads = 1);

/// (k+2) R_{n,k} == C_{n+1,k+1,0}.
bool remark_identity_check(int n, int k, unsigned threads = 1);

// --- scalable route --------------------------------------------------------
//
// Grouping the 2(n-k) bridge endpoints into k+1 ordered parts (bubble sizes
// w, zeros allowed) turns R_{n,k} into a sum over w of the number of perfect
// matchings with no chord inside a part. Inclusion-exclusion inside each part
// (j forbidden pairs among w vertices, s = w - 2j survivors) gives the
// per-part weight (-1)^j w! / (2^j j! s!), and the parts convolve over the
// state (vertices used, surviving endpoints). Summing that convolution in
// closed form: with phi(u) = sum_j (-1)^j (2j-1)!! u^j and c_J = [u^J] phi^{k+1},
//
//   R_{n,k} = sum_J c_J * C(2n-k, 2(n-k-J)) * (2(n-k-J)-1)!!.

inline constexpr int kScalableCap = 4000;

/// R_{n,k} through the phi-power closed form. Exact for all 1 <= k <= n.
BigInt rnk_scalable(int n, int k, unsigned threads = 1);

/// R_{n,1}..R_{n,k_max} (index k-1), sharing the phi-power chain.
std::vector<BigInt> rnk_scalable_row(int n, int k_max, unsigned threads = 1);

/// R_{n,k} by the explicit part-by-part convolution over (vertices used,
/// surviving endpoints). Quartic in n; an independent check of rnk_scalable.
BigInt rnk_part_convolution(int n, int k);

/// psi(N, k) via rnk_scalable(N + k, k).
BigInt psi_scalable(int N, int k, unsigned threads = 1);

/// cnkq_formula with its psi factor taken from psi_scalable.
BigInt cnkq_scalable(int n, int k, int q, unsigned threads = 1);

struct KMoments {
  Rational mean;
  Rational variance;
};

inline constexpr int kMomentsCap = 600;

/// Exact mean and variance of k under weights R_{n,k}, k = 1..n.
KMoments exact_k_moments(int n, unsigned threads = 1);

}  // namespace chord
