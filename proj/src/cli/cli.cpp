#include "chord/cli.hpp"

#include "chord/asymptotics.hpp"
#include "chord/census.hpp"
#include "chord/crystal.hpp"
#include "chord/errors.hpp"
#include "chord/process.hpp"
#include "chord/rng.hpp"
#include "chord/spectral.hpp"
#include "chord/table.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace chord::cli {

namespace {

/// Failure of a verification step; maps to kVerification.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Result {
  Table table;
  nlohmann::ordered_json extra_meta = nlohmann::ordered_json::object();
  int exit_code = kOk;
};

struct Config {
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;
  std::uint64_t seed = kDefaultSeed;

  int n = 0, k = 0, q = 0, b = 0;
  int k_min = 2, k_max = 12;
  int n_min = 4, n_max = 60, step = 1;
  std::uint64_t samples = 1'000'000;
  std::uint64_t trials = 1000;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t max_timeouts = 0;
  bool scalable = false;
  bool stopping_times = false;
};

void require_option(const CLI::Option* opt) {
  if (opt->count() == 0) throw CLI::RequiredError(opt->get_name());
}

Cell cell(int v) { return static_cast<std::int64_t>(v); }
Cell cell(std::uint64_t v) { return static_cast<std::int64_t>(v); }
Cell cell(const Rational& v) { return to_decimal(v); }

// --- census ----------------------------------------------------------------

Result census_command(const std::string& which, const Config& c) {
  const CensusTables tables = run_census(c.n, c.threads);
  if (which == "nqb") {
    std::vector<std::string> cols{"q"};
    for (int b = 0; b < c.n; ++b) cols.push_back("b" + std::to_string(b));
    Table t(cols);
    for (int q = 1; q <= 2 * c.n; ++q) {
      std::vector<Cell> row{cell(q)};
      for (int b = 0; b < c.n; ++b) row.push_back(tables.nqb.at(q, b));
      t.add_row(std::move(row));
    }
    return {std::move(t)};
  }
  if (which == "short") {
    Table t({"k", "diagrams"});
    for (int k = 0; k <= c.n; ++k) t.add_row({cell(k), tables.shorts.at(k)});
    return {std::move(t)};
  }
  if (which == "rnk") {
    std::vector<std::string> cols{"n"};
    for (int k = 1; k <= c.n; ++k) cols.push_back("k" + std::to_string(k));
    Table t(cols);
    std::vector<Cell> row{cell(c.n)};
    for (int k = 1; k <= c.n; ++k) row.push_back(tables.rnk.at(k));
    t.add_row(std::move(row));
    return {std::move(t)};
  }
  if (which == "cnkq") {
    Table t({"n", "k", "q", "count"});
    for (int k = 1; k <= c.n; ++k)
      for (int q = 0; q <= 2 * c.n; ++q) t.add_row({cell(c.n), cell(k), cell(q), tables.cnkq.at(k, q)});
    return {std::move(t)};
  }
  Table t({"q", "bubbles"});
  for (int q = 1; q <= 2 * c.n; ++q) t.add_row({cell(q), tables.bubsize.at(q)});
  return {std::move(t)};
}

// --- crystal ---------------------------------------------------------------

Result crystal_command(const std::string& which, const Config& c, bool has_k, bool has_q) {
  if (which == "rnk") {
    Table t({"n", "k", "R"});
    if (has_k) {
      t.add_row({cell(c.n), cell(c.k), c.scalable ? rnk_scalable(c.n, c.k, c.threads) : rnk_formula(c.n, c.k, c.threads)});
    } else if (c.scalable) {
      const auto row = rnk_scalable_row(c.n, c.n, c.threads);
      for (int k = 1; k <= c.n; ++k) t.add_row({cell(c.n), cell(k), row[static_cast<std::size_t>(k - 1)]});
    } else {
      for (int k = 1; k <= c.n; ++k) t.add_row({cell(c.n), cell(k), rnk_formula(c.n, k, c.threads)});
    }
    return {std::move(t)};
  }
  if (which == "cnkq") {
    Table t({"n", "k", "q", "C"});
    auto value = [&](int k, int q) {
      return c.scalable ? cnkq_scalable(c.n, k, q, c.threads) : cnkq_formula(c.n, k, q, c.threads);
    };
    const int k_lo = has_k ? c.k : 1, k_hi = has_k ? c.k : c.n;
    const int q_lo = has_q ? c.q : 0, q_hi = has_q ? c.q : 2 * c.n;
    for (int k = k_lo; k <= k_hi; ++k)
      for (int q = q_lo; q <= q_hi; ++q) t.add_row({cell(c.n), cell(k), cell(q), value(k, q)});
    return {std::move(t)};
  }
  const KMoments m = exact_k_moments(c.n, c.threads);
  Table t({"n", "mean", "meanExact", "variance", "varianceExact"});
  t.add_row({cell(c.n), to_double(m.mean), cell(m.mean), to_double(m.variance), cell(m.variance)});
  return {std::move(t)};
}

// --- spectra ---------------------------------------------------------------

Result spectra_command(const Config& c) {
  if (c.k_min < 2 || c.k_max < c.k_min) throw std::invalid_argument("spectra needs 2 <= k-min <= k-max");
  Table t({"k", "matrix", "claimed", "verified", "certificate"});
  bool all = true;
  for (int k = c.k_min; k <= c.k_max; ++k)
    for (const auto& r : spectral_certificates(k)) {
      std::string claimed;
      for (const auto& e : r.claimed)
        claimed += (claimed.empty() ? "" : " ") + to_decimal(e.value) + ":" + std::to_string(e.multiplicity);
      t.add_row({cell(k), r.matrix, claimed, r.verified, r.certificate});
      all = all && r.verified;
    }
  Result out{std::move(t)};
  out.exit_code = all ? kOk : kVerification;
  return out;
}

// --- asympt ----------------------------------------------------------------

Cell log_cell(const LogValue& v) { return v.is_zero() ? Cell(Null{}) : Cell(v.log_abs); }

Result asympt_command(const std::string& which, const Config& c, bool has_k, bool has_q, bool has_b) {
  if (which == "model") {
    Table t({"n", "q", "b", "inDomain", "logModel", "logLeading"});
    const int b_lo = has_b ? c.b : 0, b_hi = has_b ? c.b : c.q;
    for (int b = b_lo; b <= b_hi; ++b) {
      const NqbModel m = model_nqb(c.n, c.q, b);
      t.add_row({cell(c.n), cell(c.q), cell(b), m.in_domain, log_cell(m.full), log_cell(m.leading)});
    }
    return {std::move(t)};
  }
  if (which == "bridges") {
    Table t({"n", "q", "eqBbar", "limitBbar", "eqVar"});
    const int q_lo = has_q ? c.q : 1, q_hi = has_q ? c.q : 2 * c.n;
    for (int q = q_lo; q <= q_hi; ++q)
      t.add_row({cell(c.n), cell(q), mean_bridges(c.n, q), mean_bridges_limit(c.n, q), var_bridges(c.n, q)});
    return {std::move(t)};
  }
  if (which == "rnk") {
    Table t({"n", "k", "logR"});
    const int k_lo = has_k ? c.k : 1, k_hi = has_k ? c.k : c.n - 1;
    for (int k = k_lo; k <= k_hi; ++k) t.add_row({cell(c.n), cell(k), log_cell(log_rnk_asympt(c.n, k))});
    return {std::move(t)};
  }
  if (which == "kmoments") {
    const ShortChordMoments m = short_chord_moments(c.n);
    Table t({"n", "kbarLeading", "kbarRefined", "variance", "qbar"});
    t.add_row({cell(c.n), m.kbar_leading, m.kbar_refined, m.variance, m.qbar});
    return {std::move(t)};
  }
  Table t({"n", "k", "q", "logC"});
  t.add_row({cell(c.n), cell(c.k), cell(c.q), log_cell(log_cnkq_asympt(c.n, c.k, c.q))});
  return {std::move(t)};
}

// --- simulate --------------------------------------------------------------

Result simulate_command(const Config& c) {
  const CrystallizationStats s = experiment(c.n, c.trials, c.seed, c.max_steps, c.threads);
  Result out{Table({})};
  if (c.stopping_times) {
    Table t({"stoppingTime", "runs"});
    for (auto [time, runs] : s.stopping_times) t.add_row({cell(time), cell(runs)});
    out.table = std::move(t);
  } else {
    Table t({"k", "runs", "frequency", "reference"});
    const std::uint64_t completed = s.trials - s.timeouts;
    for (int k = 0; k <= c.n; ++k) {
      const auto runs = s.final_k[static_cast<std::size_t>(k)];
      Cell freq = completed ? Cell(static_cast<double>(runs) / static_cast<double>(completed)) : Cell(Null{});
      Cell ref = s.reference.empty() ? Cell(Null{}) : Cell(s.reference[static_cast<std::size_t>(k)]);
      t.add_row({cell(k), cell(runs), freq, ref});
    }
    out.table = std::move(t);
  }
  auto& summary = out.extra_meta["summary"];
  summary["trials"] = s.trials;
  summary["timeouts"] = s.timeouts;
  summary["meanStoppingTime"] = s.mean_stopping_time;
  summary["meanFinalK"] = s.mean_final_k;
  summary["totalVariation"] = s.total_variation ? nlohmann::ordered_json(*s.total_variation) : nlohmann::ordered_json(nullptr);
  if (c.n >= 4) summary["kbarRefined"] = short_chord_moments(c.n).kbar_refined;
  if (s.timeouts > c.max_timeouts) out.exit_code = kTimeout;
  return out;
}

// --- figure ----------------------------------------------------------------

Result figure_command(const std::string& which, const Config& c, bool has_k_max) {
  if (which == "bridge-moments") {
    const auto profile = mc_bridge_profile(c.n, c.samples, c.seed, c.threads);
    Table t({"q", "mcMean", "mcSE", "eqBbar", "mcVar", "eqVar", "mcVarSE", "bubbles"});
    for (int q = 1; q <= 2 * c.n; ++q) {
      const auto& e = profile[static_cast<std::size_t>(q - 1)];
      const bool has_var = e && e->bubbles > 1;
      t.add_row({cell(q), e ? Cell(e->mean_bridges) : Cell(Null{}), e ? Cell(e->standard_error) : Cell(Null{}),
                 mean_bridges(c.n, q), has_var ? Cell(e->var_bridges) : Cell(Null{}), var_bridges(c.n, q),
                 has_var ? Cell(e->variance_standard_error) : Cell(Null{}), cell(e ? e->bubbles : std::uint64_t{0})});
    }
    return {std::move(t)};
  }
  if (which == "kmean") {
    if (c.n_min < 4 || c.n_max < c.n_min || c.step < 1) throw std::invalid_argument("kmean needs 4 <= n-min <= n-max, step >= 1");
    Table t({"n", "exactMean", "kbarRefined", "kbarLeading"});
    for (int n = c.n_min; n <= c.n_max; n += c.step) {
      const KMoments m = exact_k_moments(n, c.threads);
      const ShortChordMoments a = short_chord_moments(n);
      t.add_row({cell(n), to_double(m.mean), a.kbar_refined, a.kbar_leading});
    }
    return {std::move(t)};
  }
  // rs: exact R_{n,k} and the large-n form, both over max_k R_{n,k}, plus the
  // normal curve through the maximum.
  const ShortChordMoments a = short_chord_moments(c.n);
  const int k_max = has_k_max ? std::min(c.k_max, c.n)
                              : std::min(c.n, static_cast<int>(std::ceil(a.kbar_refined + 8 * std::sqrt(a.variance))) + 2);
  const auto row = rnk_scalable_row(c.n, k_max, c.threads);
  const BigInt& peak = *std::max_element(row.begin(), row.end());
  const double log_peak = std::log(peak.convert_to<double>());
  const bool finite_peak = std::isfinite(log_peak);
  // Huge values overflow double; take logs through the decimal length instead.
  auto big_log = [](const BigInt& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(v);
    if (bits < 1000) return std::log(v.convert_to<double>());
    const unsigned shift = static_cast<unsigned>(bits - 60);
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
  };
  const double lp = finite_peak ? log_peak : big_log(peak);
  Table t({"k", "R", "exactNorm", "asymptNorm", "normalNorm"});
  for (int k = 1; k <= k_max; ++k) {
    const BigInt& r = row[static_cast<std::size_t>(k - 1)];
    const double exact = std::exp(big_log(r) - lp);
    Cell asym = k < c.n ? Cell(std::exp(log_rnk_asympt(c.n, k).log_abs - lp)) : Cell(Null{});
    const double z = (k - a.kbar_refined);
    const double normal = std::exp(-z * z / (2 * a.variance));
    t.add_row({cell(k), r, exact, asym, normal});
  }
  return {std::move(t)};
}

// --- selftest --------------------------------------------------------------

Result selftest_command(const Config& c) {
  Table t({"check", "passed"});
  bool all = true;
  auto record = [&](const std::string& name, bool ok) {
    t.add_row({name, ok});
    all = all && ok;
  };
  const std::vector<BigInt> table1{1, 1, 1, 2, 3, 1, 6, 12, 6, 1, 24, 62, 39, 10, 1, 120, 396, 296, 95, 15, 1,
                                   720, 3024, 2616, 980, 195, 21, 1};
  std::size_t cursor = 0;
  bool census_ok = true, cnkq_ok = true, table_ok = true;
  for (int n = 1; n <= 7; ++n) {
    const CensusTables census = run_census(n, c.threads);
    for (int k = 1; k <= n; ++k) {
      table_ok = table_ok && census.rnk.at(k) == table1[cursor++];
      census_ok = census_ok && census.rnk.at(k) == rnk_formula(n, k);
      if (n <= 6)
        for (int q = 0; q <= 2 * n; ++q) cnkq_ok = cnkq_ok && census.cnkq.at(k, q) == cnkq_formula(n, k, q);
    }
  }
  record("census R_{n,k} equals the printed table, n<=7", table_ok);
  record("composition formula equals census R_{n,k}, n<=7", census_ok);
  record("C_{n,k,q} formula equals census, n<=6", cnkq_ok);
  bool scalable_ok = true;
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k) scalable_ok = scalable_ok && rnk_scalable(n, k) == rnk_formula(n, k);
  record("scalable R_{n,k} equals composition formula, n<=10", scalable_ok);
  bool remark_ok = true;
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) remark_ok = remark_ok && remark_identity_check(n, k);
  record("(k+2) R_{n,k} = C_{n+1,k+1,0}, n<=8", remark_ok);
  bool spectra_ok = true;
  for (int k = 2; k <= 8; ++k)
    for (const auto& r : spectral_certificates(k)) spectra_ok = spectra_ok && r.verified;
  record("spectral certificates, k=2..8", spectra_ok);
  Result out{std::move(t)};
  out.exit_code = all ? kOk : kVerification;
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json config_json(const CLI::App& root) {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::function<void(const CLI::App&)> collect = [&](const CLI::App& app) {
    for (const CLI::Option* opt : app.get_options()) {
      const std::string name = opt->get_single_name();
      if (opt->count() == 0 || name == "help" || name == "threads" || name == "output") continue;
      const auto values = opt->results();
      config[name] = values.empty() ? nlohmann::ordered_json(true) : nlohmann::ordered_json(values.back());
    }
    for (const CLI::App* sub : app.get_subcommands()) collect(*sub);
  };
  collect(root);
  return config;
}

std::filesystem::path resolve_output(const std::string& output) {
  std::filesystem::path path(output);
  if (path.is_relative())
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') path = std::filesystem::path(dir) / path;
  return path;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic combinatorics of linear chord diagrams", "chordlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", c.output, "Write output to this file instead of stdout");
  app.add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  app.set_version_flag("--version", kToolVersion);

  std::string which;
  auto* census = app.add_subcommand("census", "Exhaustive census tables");
  census->add_option("table", which, "nqb | short | rnk | cnkq | bubsize")
      ->required()
      ->check(CLI::IsMember({"nqb", "short", "rnk", "cnkq", "bubsize"}));
  census->add_option("--n", c.n, "Chords")->required();

  auto* crystal = app.add_subcommand("crystal", "Crystallized-diagram formulas");
  crystal->add_option("quantity", which, "rnk | cnkq | moments")->required()->check(CLI::IsMember({"rnk", "cnkq", "moments"}));
  crystal->add_option("--n", c.n, "Chords")->required();
  auto* crystal_k = crystal->add_option("--k", c.k, "Short chords");
  auto* crystal_q = crystal->add_option("--q", c.q, "Bubble size");
  crystal->add_flag("--scalable", c.scalable, "Use the phi-power route instead of the composition sum");

  auto* spectra = app.add_subcommand("spectra", "Exact spectral certificates for K_{k+1} matrices");
  spectra->add_option("--k-min", c.k_min, "Smallest k");
  spectra->add_option("--k-max", c.k_max, "Largest k");

  auto* asympt = app.add_subcommand("asympt", "Asymptotic formulas");
  asympt->add_option("formula", which, "model | bridges | rnk | kmoments | cnkq")
      ->required()
      ->check(CLI::IsMember({"model", "bridges", "rnk", "kmoments", "cnkq"}));
  asympt->add_option("--n", c.n, "Chords")->required();
  auto* asympt_k = asympt->add_option("--k", c.k, "Short chords");
  auto* asympt_q = asympt->add_option("--q", c.q, "Bubble size");
  auto* asympt_b = asympt->add_option("--b", c.b, "Bridges");

  auto* simulate = app.add_subcommand("simulate", "Crystallization process experiment");
  simulate->add_option("--n", c.n, "Chords")->required();
  simulate->add_option("--trials", c.trials, "Independent runs");
  simulate->add_option("--seed", c.seed, "Master seed");
  simulate->add_option("--max-steps", c.max_steps, "Step budget per run");
  simulate->add_option("--max-timeouts", c.max_timeouts, "Timeouts tolerated before exit code 4");
  simulate->add_flag("--stopping-times", c.stopping_times, "Emit the stopping-time histogram");

  auto* figure = app.add_subcommand("figure", "Data series behind the figures");
  figure->add_option("series", which, "bridge-moments | kmean | rs")
      ->required()
      ->check(CLI::IsMember({"bridge-moments", "kmean", "rs"}));
  figure->add_option("--n", c.n, "Chords");
  figure->add_option("--samples", c.samples, "Monte Carlo diagrams");
  figure->add_option("--seed", c.seed, "Master seed");
  figure->add_option("--n-min", c.n_min, "First n (kmean)");
  figure->add_option("--n-max", c.n_max, "Last n (kmean)");
  figure->add_option("--step", c.step, "Stride in n (kmean)");
  auto* figure_k_max = figure->add_option("--k-max", c.k_max, "Largest k (rs)");

  auto* selftest = app.add_subcommand("selftest", "Oracle-equivalence checks at desk scale");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage_out, usage_err;
    const int code = app.exit(e, usage_out, usage_err);
    out << usage_out.str();
    err << usage_err.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    Result result{Table({})};
    if (census->parsed()) {
      result = census_command(which, c);
    } else if (crystal->parsed()) {
      if (which == "cnkq" && crystal_q->count() == 0 && crystal_k->count() == 0 && !c.scalable && c.n > 12)
        throw CapacityError("full cnkq table by composition sum is capped at n = 12; pass --scalable");
      result = crystal_command(which, c, crystal_k->count() > 0, crystal_q->count() > 0);
    } else if (spectra->parsed()) {
      result = spectra_command(c);
    } else if (asympt->parsed()) {
      if (which == "model") require_option(asympt_q);
      if (which == "cnkq") require_option(asympt_k), require_option(asympt_q);
      result = asympt_command(which, c, asympt_k->count() > 0, asympt_q->count() > 0, asympt_b->count() > 0);
    } else if (simulate->parsed()) {
      result = simulate_command(c);
    } else if (figure->parsed()) {
      if (which != "kmean" && c.n < 1) throw std::invalid_argument("figure " + which + " needs --n");
      result = figure_command(which, c, figure_k_max->count() > 0);
    } else if (selftest->parsed()) {
      result = selftest_command(c);
    }

    std::ostringstream body;
    if (c.format == "json") {
      nlohmann::ordered_json doc;
      doc["meta"]["subcommand"] = app.get_subcommands().front()->get_name() + (which.empty() ? "" : " " + which);
      doc["meta"]["config"] = config_json(app);
      doc["meta"]["toolVersion"] = kToolVersion;
      for (auto& [key, value] : result.extra_meta.items()) doc["meta"][key] = value;
      doc["data"] = result.table.to_json();
      body << doc.dump(2) << "\n";
    } else {
      result.table.write_csv(body);
    }
    if (c.output.empty()) {
      out << body.str();
    } else {
      const auto path = resolve_output(c.output);
      std::ofstream file(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file " + path.string());
      file << body.str();
    }
    if (!result.extra_meta.empty() && c.format == "csv") err << result.extra_meta.dump() << "\n";
    return result.exit_code;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerification;
  }
}

}  // namespace chord::cli
