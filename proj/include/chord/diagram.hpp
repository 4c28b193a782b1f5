#pragma once

#include "chord/bigint.hpp"
#include "chord/rng.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chord {

/// Largest n accepted by exhaustive enumeration; 19!! is about 6.5e8 diagrams.
inline constexpr int kEnumerationCap = 10;

/// A linear chord diagram: a perfect matching on vertices 1..2n laid out on a
/// line. Vertices are 1-based throughout the public interface.
class Diagram {
 public:
  /// partner[v-1] is the vertex matched to v. Throws std::invalid_argument
  /// unless this is a fixed-point-free involution on 1..2n with n >= 1.
  explicit Diagram(std::vector<int> partner);

  static Diagram from_chords(std::span<const std::pair<int, int>> chords);

  /// Parses "(1,3)(2,4)"; whitespace is ignored.
  static Diagram parse(std::string_view text);

  /// The diagram whose chords are all short: (1,2)(3,4)...
  static Diagram all_short(int n);

  int chords() const { return static_cast<int>(partner_.size() / 2); }
  int vertices() const { return static_cast<int>(partner_.size()); }
  int partner(int v) const { return partner_[static_cast<std::size_t>(v - 1)]; }
  std::span<const int> partners() const { return partner_; }

  /// Chords as (left, right) pairs ordered by left endpoint.
  std::vector<std::pair<int, int>> chord_list() const;

  /// "(1,3)(2,4)" form, chords ordered by left endpoint.
  std::string to_string() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  friend class DiagramEnumerator;
  struct Unchecked {};
  Diagram(Unchecked, std::vector<int> partner) : partner_(std::move(partner)) {}

  std::vector<int> partner_;
};

/// Throws std::invalid_argument unless partner is a valid 1-based matching.
void validate_matching(std::span<const int> partner);

/// Deterministic stream over all (2n-1)!! diagrams. Vertex 1's partner is the
/// outermost choice, then the lowest unmatched vertex is matched to each larger
/// unmatched vertex in ascending order. The partitioned form yields only the
/// diagrams whose vertex 1 is matched to a given vertex, so the 2n-1
/// partitions can be consumed independently.
class DiagramEnumerator {
 public:
  explicit DiagramEnumerator(int n);
  DiagramEnumerator(int n, int partner_of_first);

  /// Next diagram, or nullptr when the stream is exhausted. The pointee is
  /// overwritten by the following call.
  const Diagram* next();

 private:
  void descend(int depth);
  int next_free_after(int v) const;

  int n_;
  int fixed_first_;
  bool started_ = false;
  bool done_ = false;
  Diagram current_;
  std::vector<int> left_;   // left_[d]: vertex matched at depth d
  std::vector<int> right_;  // right_[d]: its partner
};

/// (2n-1)!!, the number of diagrams with n chords.
BigInt diagram_count(int n);

/// Uniform random diagram: the lowest unmatched vertex is repeatedly paired
/// with a uniformly chosen other unmatched vertex.
Diagram sample_uniform(int n, Rng& rng);

struct Bubble {
  int start = 0;    // first vertex
  int size = 0;     // vertex count q
  int bridges = 0;  // chords with exactly one endpoint inside

  friend bool operator==(const Bubble&, const Bubble&) = default;
};

struct BubbleDecomposition {
  std::vector<Bubble> bubbles;
  std::vector<int> short_chord_positions;  // left endpoints, ascending
};

/// Left endpoints v with partner(v) = v+1, ascending.
std::vector<int> short_chords(const Diagram& d);
int short_chord_count(const Diagram& d);

/// Maximal non-empty runs of vertices not covered by short chords.
BubbleDecomposition bubbles(const Diagram& d);

/// True when every chord is short or joins two different bubbles.
bool is_crystallized(const Diagram& d);

/// Empty runs at the two ends and between adjacent short chords.
int zero_gaps(const Diagram& d);

}  // namespace chord
