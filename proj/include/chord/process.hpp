#pragma once

#include "chord/bigint.hpp"
#include "chord/diagram.hpp"
#include "chord/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace chord {

struct MoveRecord {
  int i = 0;  // chosen endpoint of a non-short chord
  int j = 0;  // neighbour, i - 1 or i + 1
  bool applied = false;
  int short_chords_created = 0;
  int short_chords_destroyed = 0;
};

/// One run of the crystallization process. Each step picks an endpoint i of a
/// non-short chord uniformly, then a neighbour j (forced at the line ends);
/// when j belongs to a short chord the proposal is rejected, otherwise the
/// two endpoints trade positions. Every attempt advances step_count.
class CrystallizationProcess {
 public:
  CrystallizationProcess(const Diagram& start, std::uint64_t seed);

  /// Stopping condition: every bubble empty.
  bool crystallized() const { return internal_chords_ == 0; }

  /// Throws ContractViolation when already crystallized.
  MoveRecord step();

  Diagram diagram() const { return Diagram(partner_); }
  std::uint64_t step_count() const { return steps_; }
  std::uint64_t applied_moves() const { return applied_; }
  int short_chord_count() const { return short_count_; }

 private:
  int partner(int v) const { return partner_[static_cast<std::size_t>(v - 1)]; }
  bool is_short_endpoint(int v) const;
  void rebuild();

  std::vector<int> partner_;
  Rng rng_;
  std::uint64_t steps_ = 0;
  std::uint64_t applied_ = 0;
  int short_count_ = 0;
  int internal_chords_ = 0;           // non-short chords with both ends in one bubble
  std::vector<int> bubble_of_;        // bubble index per vertex, -1 on short chords
  std::vector<int> free_endpoints_;   // endpoints of non-short chords
};

struct RunResult {
  Diagram final_diagram;
  std::uint64_t stopping_time = 0;  // attempted steps
  std::uint64_t applied_moves = 0;
  bool timed_out = false;
};

/// Runs until crystallized, checking the stopping condition before every
/// step. On timeout the partial state is returned with timed_out set.
RunResult run_until_crystallized(const Diagram& start, std::uint64_t seed, std::uint64_t max_steps);

struct CrystallizationStats {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 0;
  std::uint64_t timeouts = 0;
  std::map<std::uint64_t, std::uint64_t> stopping_times;  // completed runs only
  std::vector<std::uint64_t> final_k;                     // index k in [0, n], completed runs only
  double mean_stopping_time = 0;
  double mean_final_k = 0;
  /// R_{n,k} / sum R, index k in [0, n] (k = 0 has weight 0); empty past capacity.
  std::vector<double> reference;
  std::optional<double> total_variation;
};

/// Starts every trial from an independent uniform diagram. Trial t draws from
/// the stream derive_seed(seed, t), so results do not depend on `threads`.
CrystallizationStats experiment(int n, std::uint64_t trials, std::uint64_t seed, std::uint64_t max_steps,
                                unsigned threads = 0);

}  // namespace chord
