#include "chord/diagram.hpp"
#include "chord/errors.hpp"
#include "chord/process.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace chord;

TEST_CASE("n=2: the crossing diagram crystallizes in one step") {
  const Diagram start = Diagram::parse("(1,3)(2,4)");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CrystallizationProcess p(start, seed);
    REQUIRE_FALSE(p.crystallized());
    const MoveRecord m = p.step();
    CHECK(m.applied);
    CHECK(std::abs(m.i - m.j) == 1);
    CHECK(p.crystallized());
    CHECK(is_crystallized(p.diagram()));
    if (m.i == 1) {
      CHECK(m.j == 2);
      CHECK(p.diagram().to_string() == "(1,4)(2,3)");
    }
    const RunResult r = run_until_crystallized(start, seed, 100);
    CHECK(r.stopping_time == 1);
    CHECK_FALSE(r.timed_out);
  }
}

TEST_CASE("crystallized start stops at time zero") {
  const Diagram d = Diagram::parse("(1,4)(2,3)");
  const RunResult r = run_until_crystallized(d, 1, 100);
  CHECK(r.stopping_time == 0);
  CHECK(r.final_diagram == d);
  CrystallizationProcess p(d, 1);
  CHECK_THROWS_AS(p.step(), ContractViolation);
}

TEST_CASE("moves: rejections leave the diagram unchanged, swaps trade two endpoints") {
  Rng rng = make_rng(21, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Diagram start = sample_uniform(12, rng);
    CrystallizationProcess p(start, rng());
    Diagram before = p.diagram();
    int shorts = short_chord_count(before);
    std::uint64_t steps = 0;
    while (!p.crystallized()) {
      const MoveRecord m = p.step();
      ++steps;
      CHECK(p.step_count() == steps);
      const Diagram after = p.diagram();
      CHECK(std::abs(m.i - m.j) == 1);
      CHECK(before.partner(m.i) != m.j);
      CHECK(std::abs(before.partner(m.i) - m.i) != 1);
      CHECK(m.short_chords_destroyed == 0);
      if (!m.applied) {
        CHECK(after == before);
        CHECK(std::abs(before.partner(m.j) - m.j) == 1);
      } else {
        std::vector<int> expected(before.partners().begin(), before.partners().end());
        const int pi = before.partner(m.i), pj = before.partner(m.j);
        expected[m.j - 1] = pi, expected[pi - 1] = m.j;
        expected[m.i - 1] = pj, expected[pj - 1] = m.i;
        CHECK(std::vector<int>(after.partners().begin(), after.partners().end()) == expected);
      }
      const int now = short_chord_count(after);
      CHECK(now == shorts + m.short_chords_created);
      CHECK(p.short_chord_count() == now);
      CHECK(p.crystallized() == is_crystallized(after));
      before = after;
      shorts = now;
    }
    CHECK(p.applied_moves() <= p.step_count());
  }
}

TEST_CASE("runs are deterministic per seed and honour the step budget") {
  Rng rng = make_rng(4, 0);
  const Diagram start = sample_uniform(25, rng);
  const RunResult a = run_until_crystallized(start, 99, 10'000'000);
  const RunResult b = run_until_crystallized(start, 99, 10'000'000);
  CHECK(a.final_diagram == b.final_diagram);
  CHECK(a.stopping_time == b.stopping_time);
  CHECK(a.applied_moves == b.applied_moves);
  CHECK(is_crystallized(a.final_diagram));
  if (!is_crystallized(start)) {
    const RunResult cut = run_until_crystallized(start, 99, 0);
    CHECK(cut.timed_out);
    CHECK(cut.stopping_time == 0);
    CHECK(cut.final_diagram == start);
  }
}

TEST_CASE("experiment at n=2 ends in the two crystallized diagrams") {
  const CrystallizationStats s = experiment(2, 10'000, 8, 1000);
  CHECK(s.timeouts == 0);
  CHECK(s.final_k[0] == 0);
  CHECK(s.final_k[1] + s.final_k[2] == 10'000);
  CHECK(s.final_k[1] > 0);
  CHECK(s.final_k[2] > 0);
  std::uint64_t mass = 0;
  for (auto [time, runs] : s.stopping_times) mass += runs;
  CHECK(mass == 10'000);
}

TEST_CASE("experiment at n=6 reports the reference distribution") {
  const CrystallizationStats s = experiment(6, 100'000, 2, 10'000'000);
  const double row[] = {120, 396, 296, 95, 15, 1};
  REQUIRE(s.reference.size() == 7);
  CHECK(s.reference[0] == 0.0);
  for (int k = 1; k <= 6; ++k) CHECK(s.reference[k] == doctest::Approx(row[k - 1] / 923.0));
  REQUIRE(s.total_variation.has_value());
  CHECK(*s.total_variation >= 0.0);
  CHECK(*s.total_variation <= 1.0);
  CHECK(std::accumulate(s.final_k.begin(), s.final_k.end(), std::uint64_t{0}) == s.trials - s.timeouts);
}

TEST_CASE("experiment at n=30 completes within the budget") {
  const CrystallizationStats s = experiment(30, 1000, 5, 10'000'000);
  CHECK(s.timeouts == 0);
  CHECK(s.mean_stopping_time > 0);
}

TEST_CASE("experiment is independent of the thread count") {
  const CrystallizationStats a = experiment(15, 2000, 77, 10'000'000, 1);
  const CrystallizationStats b = experiment(15, 2000, 77, 10'000'000, 4);
  CHECK(a.stopping_times == b.stopping_times);
  CHECK(a.final_k == b.final_k);
  CHECK(a.mean_stopping_time == b.mean_stopping_time);
  CHECK(a.total_variation == b.total_variation);
  CHECK_THROWS_AS(experiment(5, 0, 1, 10), std::invalid_argument);
}
