// gtlab: command-line front end for pooling-matrix generation, two-stage
// simulation, hypergraph decoding, structural certification, and rate bounds.
//
// Exit codes: 0 success (and `check` on a good matrix), 1 `check` found a bad
// configuration, 2 usage or input error, 3 complexity cap exceeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtlab/certify.hpp"
#include "gtlab/decoder.hpp"
#include "gtlab/errors.hpp"
#include "gtlab/matrix.hpp"
#include "gtlab/planner.hpp"
#include "gtlab/pooling.hpp"
#include "gtlab/rates.hpp"
#include "gtlab/rng.hpp"

using namespace gtlab;

namespace {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON has no infinity literal; the CSV paths use fmt_double instead.
std::string json_number(double v) { return std::isfinite(v) ? fmt_double(v) : "null"; }

// Item identifiers in all JSON reports are 1-based; the library is 0-based.
std::string json_items(const std::vector<int>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(items[i] + 1);
  }
  return s + "]";
}

std::string json_int_list(const std::vector<int>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + "]";
}

template <class Count>
std::string json_histogram(const std::map<int, Count>& hist, const std::string& pad) {
  if (hist.empty()) return "{}";
  std::string s = "{\n";
  std::size_t i = 0;
  for (const auto& [key, count] : hist) {
    s += pad + "  \"" + std::to_string(key) + "\": " + std::to_string(count);
    s += (++i < hist.size()) ? ",\n" : "\n";
  }
  return s + pad + "}";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParameterError("cannot open output file: " + path);
  f << content;
  if (!f) throw ParameterError("failed writing output file: " + path);
}

RecoveryMode parse_mode(const std::string& name) {
  if (name == "full") return RecoveryMode::kFull;
  if (name == "partial") return RecoveryMode::kPartial;
  throw ParameterError("mode must be 'full' or 'partial'");
}

TestMatrix load_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open matrix file: " + path);
  return TestMatrix::load(f);
}

std::uint64_t capped_binomial(int n, int r, std::uint64_t cap) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) {
    if (c > cap) return cap + 1;
    c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  }
  return c > cap ? cap + 1 : c;
}

// --- gen ---------------------------------------------------------------

struct GenArgs {
  int n = 0;
  int t = 0;
  double weight = 0.0;
  bool weight_given = false;
  std::string auto_weight;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  double w = a.weight;
  if (!a.auto_weight.empty()) {
    const auto comma = a.auto_weight.find(',');
    if (comma == std::string::npos)
      throw ParameterError("--auto-weight expects 's,mode', e.g. 2,full");
    int s = 0;
    try {
      s = std::stoi(a.auto_weight.substr(0, comma));
    } catch (const std::exception&) {
      throw ParameterError("--auto-weight expects 's,mode', e.g. 2,full");
    }
    w = recommended_weight(s, parse_mode(a.auto_weight.substr(comma + 1)));
  } else if (!a.weight_given) {
    throw ParameterError("one of --weight or --auto-weight is required");
  }
  TestMatrix m = gen_matrix(a.n, a.t, w, a.seed);
  std::ofstream f(a.out);
  if (!f) throw ParameterError("cannot open output file: " + a.out);
  m.save(f);
  if (!f) throw ParameterError("failed writing output file: " + a.out);
  return 0;
}

// --- simulate ------------------------------------------------------------

struct SimulateArgs {
  int t = 0;
  int s = 0;
  int n = 0;
  bool n_given = false;
  double rate = 0.0;
  bool rate_given = false;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::string mode = "full";
  bool exhaustive = false;
  bool deterministic = false;
  std::string out;
  std::string trial_log;
};

std::vector<int> sample_hidden_set(int t, int s, std::mt19937_64& eng) {
  std::vector<int> pool(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < s; ++i) {
    const auto j = i + static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(t - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<int> hidden(pool.begin(), pool.begin() + s);
  std::sort(hidden.begin(), hidden.end());
  return hidden;
}

int run_simulate(const SimulateArgs& a) {
  const RecoveryMode mode = parse_mode(a.mode);
  if (a.t < 2) throw ParameterError("--t must be >= 2");
  if (a.s < 1 || a.s > a.t) throw ParameterError("--s must lie in [1, t]");
  if (!a.n_given && !a.rate_given) throw ParameterError("one of --n or --rate is required");
  int rows = a.n;
  if (a.rate_given) {
    if (!(a.rate > 0.0)) throw ParameterError("--rate must be positive");
    rows = static_cast<int>(std::ceil(std::log2(static_cast<double>(a.t)) / a.rate));
  }
  if (rows < 2) throw ParameterError("number of tests must be >= 2");
  if (a.trials < 0) throw ParameterError("--trials must be >= 0");

  const double w = recommended_weight(a.s, mode);
  const TestMatrix matrix = gen_matrix(rows, a.t, w, a.seed);

  std::ofstream trial_log;
  if (!a.trial_log.empty()) {
    trial_log.open(a.trial_log);
    if (!trial_log) throw ParameterError("cannot open trial log: " + a.trial_log);
  }

  const auto started = std::chrono::steady_clock::now();
  std::map<int, long long> found_hist, stage2_hist;
  long long successes = 0, trials_done = 0;
  int max_stage2 = 0;

  auto run_one = [&](const std::vector<int>& hidden) {
    DefectiveOracle oracle(a.t, hidden);
    const TwoStageResult r = mode == RecoveryMode::kFull ? run_two_stage(matrix, a.s, oracle)
                                                         : run_partial(matrix, a.s, oracle);
    bool ok;
    if (mode == RecoveryMode::kFull) {
      ok = r.found == hidden;
    } else {
      ok = std::includes(hidden.begin(), hidden.end(), r.found.begin(), r.found.end()) &&
           static_cast<int>(r.found.size()) >= a.s / 2 + 1;
    }
    successes += ok ? 1 : 0;
    ++found_hist[static_cast<int>(r.found.size())];
    ++stage2_hist[r.stage2_tests];
    max_stage2 = std::max(max_stage2, r.stage2_tests);
    ++trials_done;
    if (trial_log.is_open()) {
      trial_log << "{\"mode\": \"" << a.mode << "\", \"t\": " << a.t << ", \"s\": " << a.s
                << ", \"N\": " << rows << ", \"found\": " << json_items(r.found)
                << ", \"stage1_tests\": " << r.stage1_tests
                << ", \"stage2_tests\": " << r.stage2_tests
                << ", \"candidate_edges\": " << r.candidate_edge_count << "}\n";
    }
  };

  if (a.exhaustive) {
    constexpr std::uint64_t kMaxHiddenSets = 1'000'000;
    if (capped_binomial(a.t, a.s, kMaxHiddenSets) > kMaxHiddenSets)
      throw CapacityError("simulate: C(t, s) exceeds the exhaustive-enumeration cap");
    std::vector<int> hidden(static_cast<std::size_t>(a.s));
    for (int i = 0; i < a.s; ++i) hidden[static_cast<std::size_t>(i)] = i;
    while (true) {
      run_one(hidden);
      int i = a.s - 1;
      while (i >= 0 && hidden[static_cast<std::size_t>(i)] == a.t - a.s + i) --i;
      if (i < 0) break;
      ++hidden[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < a.s; ++j)
        hidden[static_cast<std::size_t>(j)] = hidden[static_cast<std::size_t>(j - 1)] + 1;
    }
  } else {
    for (long long trial = 0; trial < a.trials; ++trial) {
      std::mt19937_64 eng(derive_seed(mix64(a.seed), static_cast<std::uint64_t>(trial)));
      run_one(sample_hidden_set(a.t, a.s, eng));
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const double empirical_rate = std::log2(static_cast<double>(a.t)) / (rows + max_stage2);

  std::ostringstream j;
  j << "{\n";
  j << "  \"config\": {\n";
  j << "    \"t\": " << a.t << ",\n";
  j << "    \"s\": " << a.s << ",\n";
  j << "    \"N\": " << rows << ",\n";
  j << "    \"w\": " << json_number(w) << ",\n";
  j << "    \"mode\": \"" << a.mode << "\",\n";
  j << "    \"trials\": " << trials_done << ",\n";
  j << "    \"seed\": " << a.seed << ",\n";
  j << "    \"exhaustive\": " << (a.exhaustive ? "true" : "false") << "\n";
  j << "  },\n";
  j << "  \"successes\": " << successes << ",\n";
  j << "  \"partial_found_histogram\": " << json_histogram(found_hist, "  ") << ",\n";
  j << "  \"stage2_histogram\": " << json_histogram(stage2_hist, "  ") << ",\n";
  j << "  \"empirical_rate\": " << json_number(empirical_rate);
  if (!a.deterministic) j << ",\n  \"wall_time\": " << json_number(wall);
  j << "\n}\n";
  write_output(a.out, j.str());
  return 0;
}

// --- decode --------------------------------------------------------------

struct DecodeArgs {
  std::string matrix;
  int s = 0;
  std::string outcome;
  std::size_t max_edges = 1'000'000;
  std::string out;
};

int run_decode(const DecodeArgs& a) {
  const TestMatrix m = load_matrix(a.matrix);
  const OutcomeVector y = OutcomeVector::parse(a.outcome);
  DecodeOptions options;
  options.max_edges = a.max_edges;
  const CandidateHypergraph h = candidate_edges(m, a.s, y, options);

  std::ostringstream j;
  j << "{\n";
  j << "  \"t\": " << m.cols() << ",\n";
  j << "  \"s\": " << a.s << ",\n";
  j << "  \"y\": \"" << y.to_string() << "\",\n";
  j << "  \"edges\": [";
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    j << (i ? ",\n    " : "\n    ") << json_items(h.edge_vector(i));
  }
  j << (h.edge_count() ? "\n  ]\n" : "]\n");
  j << "}\n";
  write_output(a.out, j.str());
  return 0;
}

// --- check ---------------------------------------------------------------

struct CheckArgs {
  std::string matrix;
  int s = 0;
  int L = 0;
  std::string k_set;
  std::size_t max_subsets = 2'000'000;
  std::string out;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      xs.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParameterError("--k-set expects a comma-separated integer list");
    }
  }
  if (xs.empty()) throw ParameterError("--k-set expects a comma-separated integer list");
  return xs;
}

int run_check(const CheckArgs& a) {
  const TestMatrix m = load_matrix(a.matrix);
  GoodCodeOptions options;
  options.max_subsets = a.max_subsets;
  const GoodCodeReport report = is_good_code(m, a.s, a.L, parse_int_list(a.k_set), options);

  std::ostringstream j;
  j << "{\n";
  j << "  \"t\": " << m.cols() << ",\n";
  j << "  \"s\": " << a.s << ",\n";
  j << "  \"L\": " << report.L << ",\n";
  j << "  \"k_set\": " << json_int_list(report.k_values) << ",\n";
  j << "  \"is_good\": " << (report.is_good ? "true" : "false") << ",\n";
  j << "  \"outcomes_checked\": " << report.outcomes_checked << ",\n";
  if (report.witness) {
    j << "  \"witness\": {\n";
    j << "    \"k\": " << report.witness->k << ",\n";
    j << "    \"core\": " << json_items(report.witness->core) << ",\n";
    j << "    \"edges\": [";
    for (std::size_t i = 0; i < report.witness->edges.size(); ++i)
      j << (i ? ", " : "") << json_items(report.witness->edges[i]);
    j << "],\n";
    j << "    \"outcome\": \"" << report.witness_outcome << "\"\n";
    j << "  }\n";
  } else {
    j << "  \"witness\": null\n";
  }
  j << "}\n";
  write_output(a.out, j.str());
  return report.is_good ? 0 : 1;
}

// --- rates ---------------------------------------------------------------

struct RatesArgs {
  std::string s_range;
  std::string mode = "full";
  int grid = 200;
  double tol = 1e-6;
  bool compare_table1 = false;
  std::string out;
};

std::pair<int, int> parse_s_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int s = std::stoi(text);
      return {s, s};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParameterError("--s-range expects 'a..b' or a single integer");
  }
}

int run_rates(const RatesArgs& a) {
  const auto [s_lo, s_hi] = parse_s_range(a.s_range);
  if (s_lo < 2 || s_hi < s_lo) throw ParameterError("--s-range needs 2 <= a <= b");
  const RecoveryMode mode = parse_mode(a.mode);
  if (a.compare_table1 && mode != RecoveryMode::kFull)
    throw ParameterError("--compare-table1 applies to full mode only");

  RateQuery base;
  base.w_grid = a.grid;
  base.tolerance = a.tol;

  std::ostringstream o;
  o << "s,value,w_star,k,R1_k,R2_k\n";
  std::map<int, double> new_values;
  for (int s = s_lo; s <= s_hi; ++s) {
    const RateResult r =
        mode == RecoveryMode::kFull ? full_recovery_bound(s, base) : partial_recovery_bound(s, base);
    new_values[s] = r.value;
    for (const auto& [k, b] : r.per_k) {
      o << s << ',' << fmt_double(r.value) << ',' << fmt_double(r.w_star) << ',' << k << ','
        << fmt_double(b.r1) << ',' << fmt_double(b.r2) << '\n';
    }
  }
  if (a.compare_table1) {
    static const std::map<int, double> kOldBounds{{3, 0.199}, {4, 0.145}, {5, 0.114}, {6, 0.094}};
    o << "# table1: old vs new lower bounds\n";
    o << "s,old,new\n";
    for (const auto& [s, old_value] : kOldBounds) {
      if (s < s_lo || s > s_hi) continue;
      o << s << ',' << fmt_double(old_value) << ',' << fmt_double(new_values.at(s)) << '\n';
    }
  }
  write_output(a.out, o.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-testing laboratory: pooling designs, two-stage search, "
               "structural certificates, rate bounds"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate a pooling matrix file");
  gen_cmd->add_option("--n", gen_args.n, "number of tests (rows)")->required();
  gen_cmd->add_option("--t", gen_args.t, "number of items (columns)")->required();
  auto* opt_w = gen_cmd->add_option("--weight", gen_args.weight, "relative column weight in (0,1)");
  auto* opt_aw = gen_cmd->add_option("--auto-weight", gen_args.auto_weight,
                                     "derive weight from 's,mode', e.g. 2,full or 5,partial");
  opt_w->excludes(opt_aw);
  opt_aw->excludes(opt_w);
  gen_cmd->add_option("--seed", gen_args.seed, "generation seed (default 0)");
  gen_cmd->add_option("--out", gen_args.out, "output file")->required();

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "run two-stage identification trials");
  sim_cmd->add_option("--t", sim_args.t, "number of items")->required();
  sim_cmd->add_option("--s", sim_args.s, "number of defectives")->required();
  auto* opt_n = sim_cmd->add_option("--n", sim_args.n, "number of stage-1 tests");
  auto* opt_rate = sim_cmd->add_option("--rate", sim_args.rate,
                                       "design rate; sets n = ceil(log2(t)/rate)");
  opt_n->excludes(opt_rate);
  opt_rate->excludes(opt_n);
  sim_cmd->add_option("--trials", sim_args.trials, "number of random trials (default 0)");
  sim_cmd->add_option("--seed", sim_args.seed, "master seed (default 0)");
  sim_cmd->add_option("--mode", sim_args.mode, "full or partial (default full)")
      ->check(CLI::IsMember({"full", "partial"}));
  sim_cmd->add_flag("--exhaustive", sim_args.exhaustive,
                    "run every C(t,s) hidden set instead of sampling");
  sim_cmd->add_flag("--deterministic", sim_args.deterministic,
                    "omit wall_time so identical inputs give identical bytes");
  sim_cmd->add_option("--out", sim_args.out, "write the JSON report here instead of stdout");
  sim_cmd->add_option("--trial-log", sim_args.trial_log,
                      "append one JSON line per trial (found set, test counts)");

  DecodeArgs dec_args;
  auto* dec_cmd = app.add_subcommand("decode", "candidate hypergraph of an outcome vector");
  dec_cmd->add_option("--matrix", dec_args.matrix, "matrix file")->required();
  dec_cmd->add_option("--s", dec_args.s, "number of defectives")->required();
  dec_cmd->add_option("--outcome", dec_args.outcome, "outcome bit string, length n")->required();
  dec_cmd->add_option("--max-edges", dec_args.max_edges, "edge cap (default 1000000)");
  dec_cmd->add_option("--out", dec_args.out, "write the JSON here instead of stdout");

  CheckArgs chk_args;
  auto* chk_cmd = app.add_subcommand("check", "certify a matrix against bad configurations");
  chk_cmd->add_option("--matrix", chk_args.matrix, "matrix file")->required();
  chk_cmd->add_option("--s", chk_args.s, "number of defectives")->required();
  chk_cmd->add_option("--L", chk_args.L, "configuration multiplicity threshold")->required();
  chk_cmd->add_option("--k-set", chk_args.k_set, "comma-separated intersection sizes, e.g. 0,1")
      ->required();
  chk_cmd->add_option("--max-subsets", chk_args.max_subsets,
                      "cap on C(t,s) subsets scanned (default 2000000)");
  chk_cmd->add_option("--out", chk_args.out, "write the JSON here instead of stdout");

  RatesArgs rate_args;
  auto* rate_cmd = app.add_subcommand("rates", "numeric rate lower bounds as CSV");
  rate_cmd->add_option("--s-range", rate_args.s_range, "defective counts, e.g. 2..6")->required();
  rate_cmd->add_option("--mode", rate_args.mode, "full or partial (default full)")
      ->check(CLI::IsMember({"full", "partial"}));
  rate_cmd->add_option("--grid", rate_args.grid, "weight-axis grid resolution (default 200)");
  rate_cmd->add_option("--tol", rate_args.tol, "refinement tolerance (default 1e-6)");
  rate_cmd->add_flag("--compare-table1", rate_args.compare_table1,
                     "append an old-vs-new comparison block");
  rate_cmd->add_option("--out", rate_args.out, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  gen_args.weight_given = opt_w->count() > 0;
  sim_args.n_given = opt_n->count() > 0;
  sim_args.rate_given = opt_rate->count() > 0;

  try {
    if (gen_cmd->parsed()) return run_gen(gen_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (dec_cmd->parsed()) return run_decode(dec_args);
    if (chk_cmd->parsed()) return run_check(chk_args);
    if (rate_cmd->parsed()) return run_rates(rate_args);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
