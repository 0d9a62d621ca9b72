// iecount: model counting by inclusion-exclusion over monotone sub-formulae.
//
// Exit codes: 0 success, 1 bad input (parse error, invalid flags, oracle
// ceiling), 2 internal consistency error (identity out of range), 3 engines
// disagree (validate).

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "iecount/bench.hpp"
#include "iecount/cnf.hpp"
#include "iecount/counter.hpp"
#include "iecount/generator.hpp"
#include "iecount/inflation.hpp"
#include "iecount/oracle.hpp"

using namespace iecount;

namespace {

enum Exit : int { kOk = 0, kBadInput = 1, kInternal = 2, kDisagree = 3 };

// Exhaustive traversal ceiling for validate: beyond this many clauses it is
// skipped rather than left to run for minutes.
constexpr std::size_t kExhaustiveMaxClauses = 25;

class Output {
public:
  explicit Output(const std::string &path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

private:
  std::ofstream file_;
};

Formula read_formula(const std::string &path) {
  if (path == "-")
    return parse_dimacs(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  return parse_dimacs(in);
}

struct CountArgs {
  std::string in;
  std::string mode = "pruned";
  unsigned sigma = 2;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string format = "text";
  std::string out = "-";
  std::uint64_t node_limit = 0;
};

int cmd_count(const CountArgs &a) {
  const Formula f = read_formula(a.in);
  CountOptions opts;
  opts.threads = a.threads;
  opts.node_limit = a.node_limit;

  const auto start = std::chrono::steady_clock::now();
  nlohmann::json report;
  if (a.mode == "oracle") {
    const mpz_class count = brute_force_count(f);
    report = {{"modelCount", count.get_str()}, {"mode", "oracle"}, {"exact", true},
              {"nodesVisited", 0}, {"subtreesPruned", 0}, {"saturationCutoffs", 0}};
  } else {
    CountResult r;
    if (a.mode == "exhaustive") {
      r = signed_count_exhaustive(f, opts);
    } else if (a.mode == "pruned") {
      r = signed_count_pruned(f, opts);
    } else if (a.mode == "a1") {
      r = count_random_a1(f, a.sigma, opts);
    } else {
      Rng rng(*a.seed);
      r = count_a2(f, a.sigma, rng, opts);
    }
    report = to_json(r);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Output out(a.out);
  std::ostream &os = out.stream();
  if (a.format == "json") {
    os << report.dump(2) << '\n';
  } else if (a.format == "csv") {
    os << "modelCount,mode,exact,nodesVisited,subtreesPruned,saturationCutoffs\n"
       << report["modelCount"].get<std::string>() << ',' << report["mode"].get<std::string>() << ','
       << (report["exact"].get<bool>() ? "true" : "false") << ',' << report["nodesVisited"] << ','
       << report["subtreesPruned"] << ',' << report["saturationCutoffs"] << '\n';
  } else {
    if (!report["exact"].get<bool>())
      os << "c probabilistic result (exact=false): may differ from the true count\n";
    os << "s mc " << report["modelCount"].get<std::string>() << '\n'
       << "c mode " << report["mode"].get<std::string>() << '\n'
       << "c exact " << (report["exact"].get<bool>() ? "true" : "false") << '\n'
       << "c nodes visited " << report["nodesVisited"] << '\n'
       << "c subtrees pruned " << report["subtreesPruned"] << '\n'
       << "c saturation cutoffs " << report["saturationCutoffs"] << '\n';
  }
  // Timing goes to stderr so stdout stays reproducible.
  std::cerr << "c wall time " << std::fixed << std::setprecision(6) << seconds << " s\n";
  return kOk;
}

int cmd_generate(const GeneratorConfig &cfg, const std::string &out_path) {
  const Formula f = random_formula(cfg);
  Output out(out_path);
  write_dimacs(out.stream(), f);
  return kOk;
}

int cmd_inflate(const std::string &in, unsigned sigma, std::uint64_t seed, const std::string &out_path,
                const std::string &record_path) {
  const Formula f = read_formula(in);
  Rng rng(seed);
  const Inflation inf = inflate_formula(f, sigma, rng);
  {
    Output out(out_path);
    write_dimacs(out.stream(), inf.formula);
  }
  if (!record_path.empty()) {
    Output rec(record_path);
    rec.stream() << to_json(inf.record).dump(2) << '\n';
  }
  return kOk;
}

struct EngineCounts {
  std::map<std::string, std::string> exact;
  std::optional<std::string> a1;
};

EngineCounts run_engines(const Formula &f, unsigned sigma, unsigned threads) {
  EngineCounts c;
  CountOptions opts;
  opts.threads = threads;
  if (f.num_vars() <= kBruteForceMaxVars)
    c.exact["oracle"] = brute_force_count(f).get_str();
  if (f.num_clauses() <= kSignedSumMaxClauses)
    c.exact["signedSum"] = brute_force_signed_sum(f).get_str();
  if (f.num_clauses() <= kExhaustiveMaxClauses)
    c.exact["exhaustive"] = signed_count_exhaustive(f, opts).model_count.get_str();
  c.exact["pruned"] = signed_count_pruned(f, opts).model_count.get_str();
  try {
    c.a1 = count_random_a1(f, sigma, opts).model_count.get_str();
  } catch (const IdentityRangeError &) {
    c.a1 = "out-of-range";
  }
  return c;
}

bool all_agree(const std::map<std::string, std::string> &counts, const std::string *reference = nullptr) {
  std::optional<std::string> first;
  if (reference)
    first = *reference;
  for (const auto &[engine, value] : counts) {
    if (!first)
      first = value;
    else if (value != *first)
      return false;
  }
  return true;
}

void print_row(std::ostream &os, const std::string &label, const EngineCounts &c, bool agree) {
  os << label;
  for (const char *engine : {"oracle", "signedSum", "exhaustive", "pruned"}) {
    auto it = c.exact.find(engine);
    os << ' ' << engine << '=' << (it == c.exact.end() ? "-" : it->second);
  }
  os << " a1=" << c.a1.value_or("-") << (agree ? " agree" : " DISAGREE") << '\n';
}

struct ValidateArgs {
  std::string in;
  std::string compare;
  Var n = 0;
  std::uint64_t m = 0;
  unsigned k = 3;
  std::uint64_t seeds = 0;
  unsigned sigma = 2;
  unsigned threads = 1;
};

int cmd_validate(const ValidateArgs &a) {
  std::ostream &os = std::cout;
  if (!a.in.empty()) {
    const Formula f = read_formula(a.in);
    const EngineCounts base = run_engines(f, a.sigma, a.threads);
    bool agree = all_agree(base.exact);
    print_row(os, a.in, base, agree);
    if (!a.compare.empty()) {
      const Formula g = read_formula(a.compare);
      const EngineCounts other = run_engines(g, a.sigma, a.threads);
      const std::string reference = base.exact.begin()->second;
      const bool other_agree = all_agree(other.exact, &reference);
      print_row(os, a.compare, other, other_agree);
      agree = agree && other_agree;
    }
    os << (agree ? "all exact engines agree\n" : "exact engines disagree\n");
    return agree ? kOk : kDisagree;
  }

  if (a.n == 0 || a.seeds == 0)
    throw std::invalid_argument("validate needs --in FILE or --n/--m/--k/--seeds");
  std::uint64_t agreeing = 0;
  for (std::uint64_t seed = 1; seed <= a.seeds; ++seed) {
    const Formula f = random_formula(GeneratorConfig{a.n, a.m, a.k, seed});
    const EngineCounts c = run_engines(f, a.sigma, a.threads);
    const bool agree = all_agree(c.exact);
    agreeing += agree ? 1 : 0;
    print_row(os, "seed " + std::to_string(seed), c, agree);
  }
  os << agreeing << '/' << a.seeds << " instances: all exact engines agree\n";
  return agreeing == a.seeds ? kOk : kDisagree;
}

int cmd_bench(const std::string &config_path, const std::string &out_path, const std::string &format) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open '" + config_path + "'");
  const SweepConfig cfg = sweep_config_from_json(nlohmann::json::parse(in));
  const std::vector<BenchRow> rows = run_sweep(cfg);
  Output out(out_path);
  if (format == "json")
    out.stream() << to_json(rows).dump(2) << '\n';
  else
    write_csv(out.stream(), rows);
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Model counting by inclusion-exclusion over monotone sub-formulae"};
  app.require_subcommand(1);

  GeneratorConfig gen;
  std::string gen_out = "-";
  auto *generate = app.add_subcommand("generate", "Write a uniform random k-CNF in DIMACS format");
  generate->add_option("--n", gen.n, "Number of variables")->required();
  generate->add_option("--m", gen.m, "Number of distinct clauses")->required();
  generate->add_option("--k", gen.k, "Exact clause width")->required();
  generate->add_option("--seed", gen.seed, "RNG seed")->required();
  generate->add_option("--out", gen_out, "Output path, - for stdout");

  CountArgs count_args;
  std::uint64_t count_seed = 0;
  auto *count = app.add_subcommand("count", "Count models of a DIMACS CNF");
  count->add_option("--in", count_args.in, "Input CNF, - for stdin")->required();
  count->add_option("--mode", count_args.mode, "Engine")
      ->check(CLI::IsMember({"exhaustive", "pruned", "a1", "a2", "oracle"}));
  count->add_option("--sigma", count_args.sigma, "Tail length multiplier (a1, a2)")
      ->check(CLI::PositiveNumber);
  auto *seed_opt = count->add_option("--seed", count_seed, "RNG seed (required for a2)");
  count->add_option("--threads", count_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  count->add_option("--format", count_args.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  count->add_option("--out", count_args.out, "Report path, - for stdout");
  count->add_option("--node-limit", count_args.node_limit, "Abort after this many nodes (0 = none)");

  std::string inf_in;
  std::string inf_out = "-";
  std::string inf_record;
  unsigned inf_sigma = 2;
  std::uint64_t inf_seed = 0;
  auto *inflate = app.add_subcommand("inflate", "Randomly inflate a CNF, preserving its models");
  inflate->add_option("--in", inf_in, "Input CNF")->required();
  inflate->add_option("--sigma", inf_sigma, "Tail length multiplier")->check(CLI::PositiveNumber);
  inflate->add_option("--seed", inf_seed, "RNG seed")->required();
  inflate->add_option("--out", inf_out, "Output CNF path, - for stdout");
  inflate->add_option("--record", inf_record, "Write the inflation record as JSON");

  ValidateArgs val;
  auto *validate = app.add_subcommand("validate", "Cross-check every feasible engine");
  validate->add_option("--in", val.in, "Input CNF");
  validate->add_option("--compare", val.compare, "Second CNF expected to have the same count");
  validate->add_option("--n", val.n, "Corpus: number of variables");
  validate->add_option("--m", val.m, "Corpus: number of clauses");
  validate->add_option("--k", val.k, "Corpus: clause width");
  validate->add_option("--seeds", val.seeds, "Corpus: instances with seeds 1..N");
  validate->add_option("--sigma", val.sigma, "Split counter sigma")->check(CLI::PositiveNumber);
  validate->add_option("--threads", val.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string bench_config;
  std::string bench_out = "-";
  std::string bench_format = "csv";
  auto *bench = app.add_subcommand("bench", "Run a benchmark sweep");
  bench->add_option("--config", bench_config, "Sweep JSON")->required();
  bench->add_option("--out", bench_out, "Output path, - for stdout");
  bench->add_option("--format", bench_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*generate)
      return cmd_generate(gen, gen_out);
    if (*count) {
      if (*seed_opt)
        count_args.seed = count_seed;
      if (count_args.mode == "a2" && !count_args.seed) {
        std::cerr << "error: --mode a2 requires --seed\n";
        return kBadInput;
      }
      return cmd_count(count_args);
    }
    if (*inflate)
      return cmd_inflate(inf_in, inf_sigma, inf_seed, inf_out, inf_record);
    if (*validate)
      return cmd_validate(val);
    if (*bench)
      return cmd_bench(bench_config, bench_out, bench_format);
  } catch (const IdentityRangeError &e) {
    std::cerr << "internal consistency error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
