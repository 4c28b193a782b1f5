#include "chord/process.hpp"

#include "chord/crystal.hpp"
#include "chord/errors.hpp"
#include "chord/parallel.hpp"

#include <cassert>
#include <cmath>

namespace chord {

CrystallizationProcess::CrystallizationProcess(const Diagram& start, std::uint64_t seed)
    : partner_(start.partners().begin(), start.partners().end()), rng_(seed) {
  rebuild();
}

bool CrystallizationProcess::is_short_endpoint(int v) const {
  const int p = partner(v);
  return p == v + 1 || p == v - 1;
}

// Recomputes bubbles, the non-short endpoint pool and the internal-chord count.
// Called only when the set of short chords changes.
void CrystallizationProcess::rebuild() {
  const int size = static_cast<int>(partner_.size());
  bubble_of_.assign(partner_.size(), -1);
  free_endpoints_.clear();
  short_count_ = 0;
  int bubble = -1;
  bool in_run = false;
  for (int v = 1; v <= size; ++v) {
    if (is_short_endpoint(v)) {
      if (partner(v) > v) ++short_count_;
      in_run = false;
      continue;
    }
    if (!in_run) ++bubble, in_run = true;
    bubble_of_[static_cast<std::size_t>(v - 1)] = bubble;
    free_endpoints_.push_back(v);
  }
  internal_chords_ = 0;
  for (int v : free_endpoints_) {
    const int p = partner(v);
    if (p > v && bubble_of_[static_cast<std::size_t>(v - 1)] == bubble_of_[static_cast<std::size_t>(p - 1)])
      ++internal_chords_;
  }
}

MoveRecord CrystallizationProcess::step() {
  if (crystallized()) throw ContractViolation("step called on a crystallized diagram");
  ++steps_;
  MoveRecord move;
  move.i = free_endpoints_[static_cast<std::size_t>(uniform_below(rng_, free_endpoints_.size()))];
  const int size = static_cast<int>(partner_.size());
  if (move.i == 1)
    move.j = 2;
  else if (move.i == size)
    move.j = size - 1;
  else
    move.j = uniform_below(rng_, 2) == 0 ? move.i - 1 : move.i + 1;

  if (is_short_endpoint(move.j)) return move;

  // i and j are adjacent non-short endpoints, hence in the same bubble and on
  // different chords. Trading positions keeps every chord's bubble membership,
  // so the internal count only moves if a new short chord appears.
  const int pi = partner(move.i);
  const int pj = partner(move.j);
  partner_[static_cast<std::size_t>(move.j - 1)] = pi;
  partner_[static_cast<std::size_t>(pi - 1)] = move.j;
  partner_[static_cast<std::size_t>(move.i - 1)] = pj;
  partner_[static_cast<std::size_t>(pj - 1)] = move.i;
  move.applied = true;
  ++applied_;
  move.short_chords_created = (std::abs(move.j - pi) == 1) + (std::abs(move.i - pj) == 1);
  if (move.short_chords_created > 0) rebuild();
#ifndef NDEBUG
  validate_matching(partner_);
#endif
  return move;
}

RunResult run_until_crystallized(const Diagram& start, std::uint64_t seed, std::uint64_t max_steps) {
  CrystallizationProcess process(start, seed);
  while (!process.crystallized() && process.step_count() < max_steps) process.step();
  RunResult r{process.diagram(), process.step_count(), process.applied_moves(), !process.crystallized()};
  return r;
}

CrystallizationStats experiment(int n, std::uint64_t trials, std::uint64_t seed, std::uint64_t max_steps,
                                unsigned threads) {
  if (n < 1) throw std::invalid_argument("experiment needs n >= 1");
  if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");

  struct Trial {
    std::uint64_t stopping_time = 0;
    int final_k = 0;
    bool timed_out = false;
  };
  std::vector<Trial> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), threads, [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    const Diagram start = sample_uniform(n, rng);
    const RunResult r = run_until_crystallized(start, rng(), max_steps);
    results[t] = {r.stopping_time, short_chord_count(r.final_diagram), r.timed_out};
  });

  CrystallizationStats stats;
  stats.n = n;
  stats.trials = trials;
  stats.seed = seed;
  stats.max_steps = max_steps;
  stats.final_k.assign(static_cast<std::size_t>(n + 1), 0);
  long double time_sum = 0, k_sum = 0;
  for (const Trial& t : results) {
    if (t.timed_out) {
      ++stats.timeouts;
      continue;
    }
    ++stats.stopping_times[t.stopping_time];
    ++stats.final_k[static_cast<std::size_t>(t.final_k)];
    time_sum += t.stopping_time;
    k_sum += t.final_k;
  }
  const std::uint64_t completed = trials - stats.timeouts;
  if (completed > 0) {
    stats.mean_stopping_time = static_cast<double>(time_sum / completed);
    stats.mean_final_k = static_cast<double>(k_sum / completed);
  }

  if (n <= kMomentsCap) {
    const auto row = rnk_scalable_row(n, n, threads);
    BigInt total = 0;
    for (const auto& r : row) total += r;
    stats.reference.assign(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = 1; k <= n; ++k)
      stats.reference[static_cast<std::size_t>(k)] = to_double(Rational(row[static_cast<std::size_t>(k - 1)], total));
    if (completed > 0) {
      double tv = 0;
      for (int k = 0; k <= n; ++k)
        tv += std::fabs(static_cast<double>(stats.final_k[static_cast<std::size_t>(k)]) / static_cast<double>(completed) -
                        stats.reference[static_cast<std::size_t>(k)]);
      stats.total_variation = tv / 2;
    }
  }
  return stats;
}

}  // namespace chord
