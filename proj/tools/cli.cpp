// Command-line surface: keystream, stats, reduce, classes, attack,
// bound-scan, verify. Reports embed (seed, config, version) so any report
// can be reproduced byte-for-byte from its own header.

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "absg/analysis.hpp"
#include "absg/attack.hpp"
#include "absg/bits.hpp"
#include "absg/cipher.hpp"
#include "absg/gaps.hpp"
#include "absg/reconstruct.hpp"

namespace absg::cli {

using json = nlohmann::ordered_json;

namespace {

std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv)) p = std::filesystem::path(dir) / p;
  }
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

void write_text(const std::string& path, const std::string& content) {
  auto p = resolve_out(path);
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open output file " + p.string());
  f << content;
}

void emit(const std::optional<std::string>& out, const std::string& content) {
  if (out) write_text(*out, content);
  else std::cout << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

// "min:max:step", "a,b,c" or a single value
std::vector<int> parse_range(const std::string& s) {
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    int lo, hi, step;
    char c1, c2;
    std::istringstream ss(s);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || hi < lo)
      throw CLI::ValidationError("--l", "range must be min:max:step with step > 0");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw CLI::ValidationError("--l", "empty L list");
  return out;
}

StrategySpec::Kind parse_strategy(const std::string& s) {
  if (s == "typical") return StrategySpec::Kind::typical;
  if (s == "most-probable") return StrategySpec::Kind::most_probable;
  if (s == "sorted") return StrategySpec::Kind::sorted;
  throw CLI::ValidationError("--strategy", "must be typical, most-probable or sorted");
}

std::vector<std::uint32_t> parse_gaps(const std::string& s) {
  std::vector<std::uint32_t> q;
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    long v = std::stol(tok);
    if (v < 0) throw std::invalid_argument("gap values must be nonnegative");
    q.push_back(static_cast<std::uint32_t>(v));
  }
  return q;
}

std::string gaps_csv(std::span<const std::uint32_t> q) {
  std::string s;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(q[i]);
  }
  return s;
}

int run_keystream(const std::string& source, std::uint64_t seed, std::uint64_t length,
                  const std::string& poly_hex, const std::string& init_bits,
                  const std::string& format, const std::optional<std::string>& out) {
  BitSequence x;
  if (source == "iid") {
    x = iid_bits(seed, length);
  } else if (source == "lfsr") {
    if (poly_hex.empty() || init_bits.empty())
      throw CLI::ValidationError("--poly/--init", "lfsr source needs both");
    auto poly = FeedbackPolynomial::from_tap_mask_hex(poly_hex);
    x = lfsr_generate(poly, LfsrState::from_ascii(init_bits), length);
  } else {
    throw CLI::ValidationError("--source", "must be iid or lfsr");
  }
  EncodeResult enc = absg_encode(x);

  if (format == "json") {
    json j;
    j["version"] = kVersion;
    j["config"] = {{"subcommand", "keystream"}, {"source", source},   {"seed", seed},
                   {"length", length},          {"poly", poly_hex},   {"init", init_bits},
                   {"format", format}};
    j["x"] = x.to_ascii();
    j["z"] = enc.z.to_ascii();
    j["h"] = enc.empty_positions;
    j["q"] = enc.gaps;
    j["consumed"] = enc.consumed;
    j["tail_bits"] = enc.tail_bits;
    if (x.provenance.degenerate_all_zero) j["degenerate_all_zero"] = true;
    emit(out, j.dump(2) + "\n");
    return 0;
  }
  if (format == "text") {
    if (!out) throw CLI::ValidationError("--out", "text format writes parallel files; --out is required");
    write_text(*out + ".x", x.to_ascii() + "\n");
    write_text(*out + ".z", enc.z.to_ascii() + "\n");
    std::string h;
    for (std::size_t i = 0; i < enc.empty_positions.size(); ++i) {
      if (i) h += ',';
      h += std::to_string(enc.empty_positions[i]);
    }
    write_text(*out + ".h", h + "\n");
    write_text(*out + ".q", gaps_csv(enc.gaps) + "\n");
    return 0;
  }
  throw CLI::ValidationError("--format", "must be json or text");
}

int run_stats(std::uint64_t seed, std::uint64_t length, const std::string& in,
              const std::optional<std::string>& out) {
  BitSequence x;
  std::string source;
  if (!in.empty()) {
    x = BitSequence::from_ascii(read_file(in));
    source = in;
  } else {
    x = iid_bits(seed, length);
    source = "iid";
  }
  DistributionTest d = q_distribution_test(x);
  json j;
  j["version"] = kVersion;
  j["config"] = {{"subcommand", "stats"}, {"source", source}, {"seed", seed}, {"length", x.size()}};
  j["tv_distance"] = d.tv_distance;
  j["chi_square"] = d.chi_square;
  j["n_gaps"] = d.n_gaps;
  j["rate"] = rate_test(x);
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_reduce(const std::string& z_file, const std::string& q_file, const std::string& x_file,
               std::uint64_t offset, std::uint64_t target, const std::string& symbol,
               const std::optional<std::string>& out) {
  json j;
  j["version"] = kVersion;
  if (!z_file.empty() || !q_file.empty()) {
    if (z_file.empty() || q_file.empty())
      throw CLI::ValidationError("--z-file/--q-file", "gap-to-input mode needs both");
    BitSequence z = BitSequence::from_ascii(read_file(z_file));
    auto q = parse_gaps(read_file(q_file));
    BitSequence x = x_from_gaps(z.bits, q);
    j["config"] = {{"subcommand", "reduce"}, {"mode", "x-from-gaps"}, {"z", z_file}, {"q", q_file}};
    j["x"] = x.to_ascii();
    j["span"] = x.size();
    emit(out, j.dump(2) + "\n");
    return 0;
  }
  if (x_file.empty())
    throw CLI::ValidationError("--x-file", "input-to-gaps mode needs --x-file");
  BitSequence x = BitSequence::from_ascii(read_file(x_file));
  j["config"] = {{"subcommand", "reduce"}, {"mode", "gaps-from-x"}, {"x", x_file},
                 {"offset", offset},       {"target", target},      {"symbol", symbol}};
  if (symbol == "auto") {
    auto results = gaps_from_x_window_any(x, offset, target);
    json arr = json::array();
    for (auto& [sym, w] : results) {
      json r;
      r["assumed_symbol"] = std::string(1, sym_char(sym));
      r["h_start"] = w.h_start;
      r["q"] = w.q;
      r["span"] = w.span();
      if (w.out_index) r["out_index"] = *w.out_index;
      arr.push_back(r);
    }
    j["windows"] = arr;
    emit(out, j.dump(2) + "\n");
    return results.empty() ? 1 : 0;
  }
  Sym y = symbol == "empty" ? Sym::Empty : symbol == "zero" ? Sym::Zero : Sym::One;
  auto r = gaps_from_x_window(x, offset, y, target);
  j["bits_examined"] = r.bits_examined;
  if (!r.ok()) {
    j["failure"] = "input exhausted or scan budget reached before a covering gap window";
    emit(out, j.dump(2) + "\n");
    return 1;
  }
  j["h_start"] = r.window->h_start;
  j["q"] = r.window->q;
  j["span"] = r.window->span();
  if (r.window->out_index) j["out_index"] = *r.window->out_index;
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_classes(int L, const std::optional<std::string>& out) {
  std::ostringstream csv;
  csv << "# absg " << kVersion << " classes l=" << L << "\n";
  csv << "B,alpha,theta,beta,cardinality,mass\n";
  for (const GuessClass& c : sorted_classes(L)) {
    csv << c.cost() << ',' << c.alpha() << ',' << c.theta() << ',' << c.beta() << ','
        << c.cardinality().get_str() << ',' << c.mass().to_string() << "\n";
  }
  emit(out, csv.str());
  return 0;
}

int run_attack(const std::string& strategy, int L, std::uint64_t budget, std::uint64_t trials,
               std::uint64_t seed, double epsilon, const std::string& check,
               std::uint64_t horizon, const std::string& poly_hex,
               const std::optional<std::string>& out) {
  StrategySpec spec;
  spec.kind = parse_strategy(strategy);
  spec.epsilon = epsilon;
  auto stream = make_guess_stream(spec, L, budget);

  std::optional<FeedbackPolynomial> poly;
  if (check == "lfsr") {
    if (poly_hex.empty())
      throw CLI::ValidationError("--poly", "lfsr check mode needs the feedback polynomial");
    poly = FeedbackPolynomial::from_tap_mask_hex(poly_hex);
    if (poly->degree() != L)
      throw CLI::ValidationError("--poly", "polynomial degree must equal --l");
  } else if (check != "oracle") {
    throw CLI::ValidationError("--check", "must be oracle or lfsr");
  }
  if (static_cast<double>(budget) * static_cast<double>(trials) > 1e9)
    throw CLI::ValidationError("--budget/--trials", "budget*trials exceeds the 1e9 check cap");

  std::ostringstream lines;
  std::uint64_t successes = 0;
  long double query_sum = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = trial_seed(seed, t);
    GapTruth truth = check == "oracle"
                         ? GapTruth::from_iid(ts)
                         : [&] {
                             // random nonzero initial state from the trial seed
                             LfsrState st;
                             st.reg.resize(static_cast<std::size_t>(L));
                             IidBitStream bits(ts);
                             bool nz = false;
                             for (auto& b : st.reg) {
                               b = bits.next();
                               nz |= (b != 0);
                             }
                             if (!nz) st.reg[0] = 1;
                             return GapTruth::from_lfsr(*poly, st);
                           }();
    stream->reset();
    std::function<bool(const Guess&)> check_fn;
    if (check == "oracle") {
      check_fn = [&](const Guess& g) { return oracle_check(g, truth); };
    } else {
      check_fn = [&](const Guess& g) {
        // grow the observed output so the continuation window exists
        truth.has_gap(g.start + g.theta() + horizon - 1);
        return lfsr_check(g, truth.z_bits(), *poly, horizon);
      };
    }
    AttackResult r = run_qubar(*stream, check_fn, budget,
                               [&truth] { return std::span<const std::uint8_t>(truth.z_bits()); });
    if (r.success) {
      ++successes;
      query_sum += static_cast<long double>(r.queries_used);
    }
    json rec;
    rec["trial"] = t;
    rec["seed"] = ts;
    rec["success"] = r.success;
    rec["queries_used"] = r.queries_used;
    rec["budget"] = budget;
    rec["strategy"] = strategy;
    rec["l"] = L;
    rec["check"] = check;
    if (r.recovered) rec["recovered"] = r.recovered->bits.to_ascii();
    lines << rec.dump() << "\n";
  }
  emit(out, lines.str());

  json summary;
  summary["version"] = kVersion;
  summary["config"] = {{"subcommand", "attack"}, {"strategy", strategy}, {"l", L},
                       {"budget", budget},       {"trials", trials},     {"seed", seed},
                       {"epsilon", epsilon},     {"check", check},       {"horizon", horizon}};
  summary["successes"] = successes;
  summary["success_rate"] = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  summary["mean_queries_given_success"] =
      successes ? static_cast<double>(query_sum / static_cast<long double>(successes)) : 0.0;
  summary["wilson99_low"] = wilson_low(successes, trials, kWilson99Z);
  summary["wilson99_high"] = wilson_high(successes, trials, kWilson99Z);
  std::cerr << summary.dump() << "\n";
  return 0;
}

int run_bound_scan(const std::string& mode_str, const std::string& l_range,
                   const std::optional<std::string>& out) {
  ScanMode mode;
  if (mode_str == "exhaustive") mode = ScanMode::exhaustive;
  else if (mode_str == "general") mode = ScanMode::general;
  else throw CLI::ValidationError("--mode", "must be exhaustive or general");

  auto Ls = parse_range(l_range);
  auto rows = bound_scan(mode, Ls);

  std::ostringstream csv;
  csv << "# absg " << kVersion << " bound-scan mode=" << mode_str << " l=" << l_range << "\n";
  csv << "L,c_star,exponent,theorem_bound,p1,p2,pass\n";
  for (const auto& r : rows) {
    const double bound = static_cast<double>(r.bound_num.get_d() / r.bound_den.get_d());
    csv << r.L << ',' << r.c_star.get_str() << ',' << r.exponent << ',' << bound << ','
        << (r.mode == ScanMode::exhaustive ? r.p1.to_string() : std::string()) << ','
        << (r.mode == ScanMode::exhaustive ? r.p2.to_string() : std::string()) << ','
        << (r.bound_holds ? "true" : "false") << "\n";
  }
  emit(out, csv.str());
  return 0;
}

json check_entry(const std::string& name, bool pass, const std::string& detail) {
  return json{{"name", name}, {"pass", pass}, {"detail", detail}};
}

int run_verify(const std::string& suite, std::uint64_t seed,
               const std::optional<std::string>& out) {
  json checks = json::array();

  if (suite == "distribution") {
    BitSequence x = iid_bits(seed, 1000000);
    DistributionTest d = q_distribution_test(x);
    checks.push_back(check_entry("tv_distance < 0.01", d.tv_distance < 0.01,
                                 "tv=" + std::to_string(d.tv_distance) + " over " +
                                     std::to_string(d.n_gaps) + " gaps"));
    double rate = rate_test(x);
    checks.push_back(check_entry("rate within [0.323, 0.343]", rate >= 0.323 && rate <= 0.343,
                                 "rate=" + std::to_string(rate)));
  } else if (suite == "markov") {
    bool empty_ok = true, run_ok = true;
    std::string detail;
    for (int n = 1; n <= 16; ++n) {
      if (!(empty_state_prob_exact(n) == empty_state_prob_formula(n))) {
        empty_ok = false;
        detail += " n=" + std::to_string(n);
      }
    }
    checks.push_back(check_entry("Pr[Y_n empty] matches the closed form exactly, n=1..16",
                                 empty_ok, detail.empty() ? "exact equality" : detail));
    for (int n = 1; n <= 15 && run_ok; ++n)
      for (int w = 1; n + w <= 16 && run_ok; ++w)
        run_ok = no_empty_run_prob_exact(n, w) == no_empty_run_prob_formula(n, w);
    checks.push_back(check_entry("no-empty-run law matches exactly, n+w <= 16", run_ok,
                                 run_ok ? "exact equality" : "mismatch"));
  } else if (suite == "roundtrip") {
    const int L = 24;
    std::size_t failures = 0, scan_failures = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      BitSequence x = iid_bits(trial_seed(seed, t), 10 * L);
      auto scan = gaps_from_x_window(x, 0, Sym::Empty, L);
      if (!scan.ok()) {
        ++scan_failures;
        continue;
      }
      const GapWindow& w = *scan.window;
      EncodeResult enc = absg_encode(x);
      std::size_t first = *w.out_index - 1;
      BitSequence rebuilt = x_from_gaps(
          std::span<const std::uint8_t>(enc.z.bits.data() + first, w.q.size()), w.q);
      bool match = std::equal(rebuilt.bits.begin(), rebuilt.bits.end(),
                              x.bits.begin() + static_cast<std::ptrdiff_t>(w.h_start));
      if (!match) ++failures;
    }
    checks.push_back(check_entry("1000 scan round trips reproduce the input slice",
                                 failures == 0 && scan_failures == 0,
                                 std::to_string(failures) + " mismatches, " +
                                     std::to_string(scan_failures) + " scan failures"));
  } else if (suite == "typicality") {
    const int L = 24, theta = L / 3;
    const double eps = 0.1;
    bool members_ok = true;
    CompositionCursor cur(theta, static_cast<std::uint64_t>(theta));
    std::size_t count = 0;
    do {
      ++count;
      if (!is_typical(cur.value(), eps)) members_ok = false;
    } while (cur.advance());
    checks.push_back(check_entry("all class (L/3, 0) elements are typical at eps=0.1",
                                 members_ok && count == 6435,
                                 std::to_string(count) + " elements"));
    bool nonmembers_ok = true;
    std::uint64_t s = seed;
    for (int t = 0; t < 10000; ++t) {
      std::vector<std::uint32_t> q(theta);
      std::uint64_t beta;
      do {
        beta = 0;
        for (auto& v : q) {
          // geometric(1/2) sample from the mixed stream
          std::uint32_t g = 0;
          while (splitmix64(s++) & 1) ++g;
          v = g;
          beta += g;
        }
      } while (beta == static_cast<std::uint64_t>(theta));
      if (is_typical(q, eps)) nonmembers_ok = false;
    }
    checks.push_back(check_entry("10^4 random non-members are atypical at eps=0.1",
                                 nonmembers_ok, "beta != L/3 never typical"));
  } else if (suite == "optimality") {
    for (int L : {10, 12, 14}) {
      SortedGuessStream stream(L, true);
      std::vector<Guess> guesses;
      ExactProb mass;
      const ExactProb half(1, 1);
      while (mass <= half) {
        auto g = stream.next();
        if (!g) break;
        mass += guess_probability(g->q);
        guesses.push_back(std::move(*g));
      }
      bool crossed = mass > half;
      auto violations = validate_prefix_free(guesses);
      bool disjoint = validate_disjoint_success(guesses, L);
      ExactProb brute = brute_union_probability(guesses);
      bool sum_form = brute == mass;
      bool sorted_ok = true;
      for (std::size_t i = 1; i < guesses.size(); ++i)
        if (guesses[i].cost() < guesses[i - 1].cost()) sorted_ok = false;
      checks.push_back(check_entry(
          "L=" + std::to_string(L) + " minimal stream truncated past mass 1/2",
          crossed && violations.empty() && disjoint && sum_form && sorted_ok,
          std::to_string(guesses.size()) + " guesses, mass=" + mass.to_string() +
              ", prefix violations=" + std::to_string(violations.size()) +
              ", disjoint=" + (disjoint ? "yes" : "no") +
              ", sum-form=" + (sum_form ? "exact" : "MISMATCH")));
    }
  } else {
    throw CLI::ValidationError(
        "--suite", "must be distribution, markov, roundtrip, typicality or optimality");
  }

  bool pass = true;
  for (const auto& c : checks) pass = pass && c.at("pass").get<bool>();
  json j;
  j["version"] = kVersion;
  j["config"] = {{"subcommand", "verify"}, {"suite", suite}, {"seed", seed}};
  j["pass"] = pass;
  j["checks"] = checks;
  emit(out, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int do_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"ABSG keystream tooling and query-based key-recovery attack harness"};
  app.require_subcommand(1);
  app.footer("Relative --out paths resolve under $" + std::string(kOutputDirEnv) +
             " when it is set.");

  // keystream
  auto* ks = app.add_subcommand("keystream", "Generate input bits and the encoded keystream record");
  std::string ks_source = "iid", ks_poly, ks_init, ks_format = "json";
  std::uint64_t ks_seed = 1, ks_len = 0;
  std::optional<std::string> ks_out;
  ks->add_option("--source", ks_source, "iid or lfsr");
  ks->add_option("--seed", ks_seed, "seed for the iid source");
  ks->add_option("--length,--m", ks_len, "number of input bits")->required();
  ks->add_option("--poly", ks_poly, "feedback polynomial as hex tap mask (bit j-1 set <=> tap j; e.g. {1,4} -> 9)");
  ks->add_option("--init", ks_init, "initial register bits, oldest first");
  ks->add_option("--format", ks_format, "json or text (text writes .x/.z/.h/.q files)");
  ks->add_option("--out", ks_out, "output path (text: path prefix)");

  // stats
  auto* st = app.add_subcommand("stats", "Gap-distribution and output-rate statistics");
  std::uint64_t st_seed = 1, st_len = 1000000;
  std::string st_in;
  std::optional<std::string> st_out;
  st->add_option("--seed", st_seed, "seed for the iid source");
  st->add_option("--length,--m", st_len, "number of iid input bits");
  st->add_option("--in", st_in, "read input bits (ascii 0/1) from a file instead");
  st->add_option("--out", st_out, "output path");

  // reduce
  auto* rd = app.add_subcommand("reduce", "Gap window <-> input window reductions");
  std::string rd_z, rd_q, rd_x, rd_symbol = "empty";
  std::uint64_t rd_offset = 0, rd_target = 0;
  std::optional<std::string> rd_out;
  rd->add_option("--z-file", rd_z, "observed output bits (ascii)");
  rd->add_option("--q-file", rd_q, "guessed gaps (comma-separated)");
  rd->add_option("--x-file", rd_x, "input bits (ascii)");
  rd->add_option("--offset", rd_offset, "scan offset n into x");
  rd->add_option("--target", rd_target, "minimum input bits the gap window must span");
  rd->add_option("--symbol", rd_symbol, "state at the offset: empty, zero, one or auto");
  rd->add_option("--out", rd_out, "output path");

  // classes
  auto* cl = app.add_subcommand("classes", "Dump the sorted guess-class table as CSV");
  int cl_l = 0;
  std::optional<std::string> cl_out;
  cl->add_option("--l", cl_l, "feedback polynomial degree (even)")->required();
  cl->add_option("--out", cl_out, "output path");

  // attack
  auto* at = app.add_subcommand("attack", "Run guess/check attack trials");
  std::string at_strategy, at_check = "oracle", at_poly;
  int at_l = 0;
  std::uint64_t at_budget = 0, at_trials = 1, at_seed = 1, at_horizon = 0;
  double at_eps = 0.1;
  std::optional<std::string> at_out;
  at->add_option("--strategy", at_strategy, "typical, most-probable or sorted")->required();
  at->add_option("--l", at_l, "feedback polynomial degree")->required();
  at->add_option("--budget", at_budget, "query budget per trial")->required();
  at->add_option("--trials", at_trials, "number of independent trials");
  at->add_option("--seed", at_seed, "run seed; trial t uses trial_seed(seed, t)");
  at->add_option("--epsilon", at_eps, "typicality parameter (typical strategy)");
  at->add_option("--check", at_check, "oracle or lfsr");
  at->add_option("--horizon", at_horizon, "output bits compared by the lfsr check (default 2L)");
  at->add_option("--poly", at_poly, "feedback polynomial hex tap mask (lfsr check)");
  at->add_option("--out", at_out, "write per-trial JSON lines here instead of stdout");

  // bound-scan
  auto* bs = app.add_subcommand("bound-scan", "Exact minimal-budget scan against the converse bounds");
  std::string bs_mode = "exhaustive", bs_l;
  std::optional<std::string> bs_out;
  bs->add_option("--mode", bs_mode, "exhaustive or general");
  bs->add_option("--l", bs_l, "L values: min:max:step, comma list, or single value")->required();
  bs->add_option("--out", bs_out, "output path");

  // verify
  auto* vf = app.add_subcommand("verify", "Self-check suites");
  std::string vf_suite;
  std::uint64_t vf_seed = 20250808;
  std::optional<std::string> vf_out;
  vf->add_option("--suite", vf_suite, "distribution, markov, roundtrip, typicality or optimality")
      ->required();
  vf->add_option("--seed", vf_seed, "seed for randomized checks");
  vf->add_option("--out", vf_out, "output path");

  std::vector<const char*> argv;
  argv.push_back("absg");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  if (ks->parsed())
    return run_keystream(ks_source, ks_seed, ks_len, ks_poly, ks_init, ks_format, ks_out);
  if (st->parsed()) return run_stats(st_seed, st_len, st_in, st_out);
  if (rd->parsed())
    return run_reduce(rd_z, rd_q, rd_x, rd_offset, rd_target, rd_symbol, rd_out);
  if (cl->parsed()) return run_classes(cl_l, cl_out);
  if (at->parsed()) {
    std::uint64_t horizon = at_horizon ? at_horizon : 2 * static_cast<std::uint64_t>(at_l);
    return run_attack(at_strategy, at_l, at_budget, at_trials, at_seed, at_eps, at_check,
                      horizon, at_poly, at_out);
  }
  if (bs->parsed()) return run_bound_scan(bs_mode, bs_l, bs_out);
  if (vf->parsed()) return run_verify(vf_suite, vf_seed, vf_out);
  return 2;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  try {
    return do_dispatch(args);
  } catch (const CLI::ParseError& e) {
    // validation raised by a subcommand handler after parsing
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace absg::cli
