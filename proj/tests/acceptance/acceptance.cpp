// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include "chord/asymptotics.hpp"
#include "chord/census.hpp"
#include "chord/cli.hpp"
#include "chord/crystal.hpp"
#include "chord/diagram.hpp"
#include "chord/process.hpp"
#include "chord/spectral.hpp"
#include "nqb_tables.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace chord;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double log_big(const BigInt& v) {
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 1000) return std::log(v.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 60);
  return std::log(BigInt(v >> shift).convert_to<double>()) + shift * std::log(2.0);
}

Outcome enumeration_totals() {
  const auto start = Clock::now();
  const long expected[] = {1, 3, 15, 105, 945, 10395, 135135, 2027025};
  Outcome o;
  for (int n = 1; n <= 8; ++n) {
    long count = 0;
    DiagramEnumerator e(n);
    while (e.next() != nullptr) ++count;
    if (count != expected[n - 1]) o.pass = false, o.detail += " n=" + std::to_string(n) + " gave " + std::to_string(count);
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 60;
  o.detail += " (" + std::to_string(t) + " s)";
  return o;
}

Outcome nqb_tables() {
  const auto start = Clock::now();
  Outcome o;
  int mismatches = 0;
  for (int n = 2; n <= 5; ++n) {
    const CountTable t = count_nqb(n);
    const auto& printed = kPrintedNqb[static_cast<std::size_t>(n - 2)];
    for (int q = 1; q <= 2 * n; ++q)
      for (int b = 0; b < n; ++b) mismatches += t.at(q, b) != printed[q - 1][b];
  }
  const double t = seconds_since(start);
  o.pass = mismatches == 0 && t < 1;
  o.detail = std::to_string(mismatches) + " mismatched entries (" + std::to_string(t) + " s)";
  return o;
}

Outcome crystallized_table() {
  Outcome o;
  int checked = 0, bad = 0;
  for (int n = 1; n <= 7; ++n) {
    const CountTable brute = count_rnk_bruteforce(n);
    for (int k = 1; k <= n; ++k) {
      ++checked;
      bad += brute.at(k) != kPrintedRnk[n - 1][k - 1];
      bad += rnk_formula(n, k) != brute.at(k);
    }
  }
  for (int n = 1; n <= 12; ++n) {
    bad += rnk_formula(n, 1) != factorial(n - 1);
    bad += rnk_formula(n, n) != 1;
    if (n >= 2) bad += rnk_formula(n, n - 1) != n * (n - 1) / 2;
  }
  o.pass = checked == 28 && bad == 0;
  o.detail = std::to_string(checked) + " printed values, " + std::to_string(bad) + " failures";
  return o;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  int bad = 0;
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k) bad += rnk_scalable(n, k) != rnk_formula(n, k);
  for (int n = 1; n <= 6; ++n) {
    const CountTable c = count_cnkq_bruteforce(n);
    for (int k = 1; k <= n; ++k)
      for (int q = 0; q <= 2 * n; ++q) bad += cnkq_formula(n, k, q) != c.at(k, q);
  }
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) bad += !remark_identity_check(n, k);
  const double t = seconds_since(start);
  return {bad == 0 && t < 300, std::to_string(bad) + " failures (" + std::to_string(t) + " s)"};
}

Outcome spectral() {
  const auto start = Clock::now();
  int total = 0, verified = 0;
  for (int k = 2; k <= 12; ++k)
    for (const auto& r : spectral_certificates(k)) ++total, verified += r.verified;
  const double t = seconds_since(start);
  return {total == 55 && verified == 55 && t < 30,
          std::to_string(verified) + "/" + std::to_string(total) + " certificates (" + std::to_string(t) + " s)"};
}

Outcome bridge_moments_mc() {
  const auto start = Clock::now();
  const int n = 100;
  const auto profile = mc_bridge_profile(n, 1'000'000, 1);
  Outcome o;
  std::ostringstream detail;
  detail << std::setprecision(4);
  for (int q = 40; q <= 160; q += 20) {
    const auto& e = profile[static_cast<std::size_t>(q - 1)];
    if (!e) {
      o.pass = false;
      detail << " q=" << q << ": no bubbles;";
      continue;
    }
    const double mean = mean_bridges(n, q), var = var_bridges(n, q);
    const bool mean_ok = std::abs(e->mean_bridges - mean) <= std::max(5 * e->standard_error, 0.05 * mean);
    const bool var_ok = std::abs(e->var_bridges - var) <= std::max(5 * e->variance_standard_error, 0.10 * var);
    o.pass = o.pass && mean_ok && var_ok;
    detail << " q=" << q << " mean " << e->mean_bridges << "/" << mean << (mean_ok ? "" : "!") << " var "
           << e->var_bridges << "/" << var << (var_ok ? "" : "!") << ";";
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 600;
  detail << " (" << t << " s)";
  o.detail = detail.str();
  return o;
}

Outcome short_chord_mean() {
  int bad = 0;
  for (int n = 1; n <= 7; ++n) {
    const CountTable t = count_short_distribution(n);
    BigInt weighted = 0;
    for (int k = 0; k <= n; ++k) weighted += t.at(k) * k;
    bad += weighted != diagram_count(n);
  }
  return {bad == 0, std::to_string(bad) + " failures"};
}

// Max-normalized exact curve against a curve f(k), sup over k = 1..k_max.
double sup_distance(const std::vector<BigInt>& row, const std::function<double(int)>& f) {
  double log_peak = -INFINITY, f_peak = 0;
  for (const auto& r : row) log_peak = std::max(log_peak, log_big(r));
  for (int k = 1; k <= static_cast<int>(row.size()); ++k) f_peak = std::max(f_peak, f(k));
  double sup = 0;
  for (int k = 1; k <= static_cast<int>(row.size()); ++k)
    sup = std::max(sup, std::abs(std::exp(log_big(row[static_cast<std::size_t>(k - 1)]) - log_peak) - f(k) / f_peak));
  return sup;
}

Outcome k_distribution_shape() {
  const int n = 60;
  const auto row = rnk_scalable_row(n, n);
  int argmax = 1;
  for (int k = 1; k <= n; ++k)
    if (row[static_cast<std::size_t>(k - 1)] > row[static_cast<std::size_t>(argmax - 1)]) argmax = k;
  const ShortChordMoments m = short_chord_moments(n);
  const long target = std::lround(m.kbar_refined);
  const double sup = sup_distance(row, [&](int k) {
    const double z = k - m.kbar_refined;
    return std::exp(-z * z / (2 * m.variance));
  });
  std::ostringstream detail;
  detail << std::setprecision(4) << "argmax " << argmax << " vs round(" << m.kbar_refined << ") = " << target
         << ", normal sup-norm " << sup;
  return {std::abs(argmax - target) <= 1 && sup <= 0.15, detail.str()};
}

Outcome k_distribution_stretch() {
  const auto start = Clock::now();
  auto asym_sup = [](int n, int k_max) {
    const auto row = rnk_scalable_row(n, k_max);
    double peak = -INFINITY;
    for (int k = 1; k <= k_max; ++k) peak = std::max(peak, log_rnk_asympt(n, k).log_abs);
    return sup_distance(row, [&](int k) { return std::exp(log_rnk_asympt(n, k).log_abs - peak); });
  };
  const double s250 = asym_sup(250, 40);
  const double s1000 = asym_sup(1000, 60);
  std::ostringstream detail;
  detail << std::setprecision(4) << "asymptotic sup-norm n=250 " << s250 << ", n=1000 " << s1000 << " ("
         << seconds_since(start) << " s)";
  return {s1000 < s250, detail.str()};
}

Outcome process_correctness() {
  const int n = 20;
  const std::uint64_t trials = 10'000, seed = 20240901, budget = 10'000'000;
  int timeouts = 0, not_crystal = 0, bad_rejections = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, t);
    const Diagram start = sample_uniform(n, rng);
    const std::uint64_t run_seed = rng();
    const RunResult r = run_until_crystallized(start, run_seed, budget);
    timeouts += r.timed_out;
    not_crystal += !r.timed_out && !is_crystallized(r.final_diagram);
    if (t < 200) {
      CrystallizationProcess p(start, run_seed);
      while (!p.crystallized()) {
        const Diagram before = p.diagram();
        if (!p.step().applied) bad_rejections += !(p.diagram() == before);
      }
    }
  }
  const CrystallizationStats a = experiment(n, trials, seed, budget);
  const CrystallizationStats b = experiment(n, trials, seed, budget);
  const bool rerun_same = a.stopping_times == b.stopping_times && a.final_k == b.final_k &&
                          a.total_variation == b.total_variation && a.timeouts == b.timeouts;
  std::ostringstream detail;
  detail << std::setprecision(4) << timeouts << " timeouts, " << not_crystal << " non-crystallized, " << bad_rejections
         << " altering rejections, rerun " << (rerun_same ? "identical" : "DIFFERENT") << "; report: mean stopping time "
         << a.mean_stopping_time << ", mean final k " << a.mean_final_k << ", TV to R_{n,k} "
         << a.total_variation.value_or(NAN);
  return {timeouts == 0 && not_crystal == 0 && bad_rejections == 0 && rerun_same, detail.str()};
}

Outcome cli_determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"census", "nqb", "--n", "8"},
      {"census", "cnkq", "--n", "7", "--format", "json"},
      {"crystal", "rnk", "--n", "10"},
      {"crystal", "moments", "--n", "120"},
      {"spectra", "--k-min", "2", "--k-max", "6"},
      {"asympt", "rnk", "--n", "200"},
      {"simulate", "--n", "15", "--trials", "2000", "--seed", "9", "--format", "json"},
      {"figure", "bridge-moments", "--n", "30", "--samples", "50000", "--seed", "4"},
      {"figure", "rs", "--n", "80"},
      {"selftest"},
  };
  int mismatches = 0;
  for (const auto& command : commands) {
    std::string reference;
    for (const char* threads : {"1", "2", "4", "0"}) {
      auto args = command;
      args.insert(args.end(), {"--threads", threads});
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      if (code != 0) ++mismatches;
      if (reference.empty())
        reference = out.str();
      else
        mismatches += out.str() != reference;
    }
  }
  return {mismatches == 0, std::to_string(commands.size()) + " commands x 4 thread counts, " +
                               std::to_string(mismatches) + " differences"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 enumeration totals n=1..8", enumeration_totals},
      {"2 N_{q,b} arrays n=2..5", nqb_tables},
      {"3 crystallized table and structural laws", crystallized_table},
      {"4 oracle equivalence", oracle_equivalence},
      {"5 spectral certificates k=2..12", spectral},
      {"6 bridge moments at n=100 (Monte Carlo)", bridge_moments_mc},
      {"7 mean short-chord count", short_chord_mean},
      {"8 short-chord distribution shape at n=60", k_distribution_shape},
      {"8 stretch: n=1000 closer than n=250", k_distribution_stretch},
      {"9 crystallization process at n=20", process_correctness},
      {"10 CLI determinism across thread counts", cli_determinism},
  };
  bool all = true;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
