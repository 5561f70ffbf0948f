// trisign: generate test matrices, compute the sign function of an
// upper-triangular complex matrix by one of five algorithms, benchmark the
// algorithms to CSV, or replay an instrumented run through the cache
// simulator.
//
// Exit codes: 0 success, 2 invalid usage or input, 3 numerical failure
// (repeated or pure-imaginary eigenvalues, infeasible generator gap, ...).

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trisign/classic.hpp"
#include "trisign/core.hpp"
#include "trisign/harness.hpp"
#include "trisign/matrix_io.hpp"
#include "trisign/recursive.hpp"
#include "trisign/sylvester.hpp"

using namespace trisign;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr const char* kCostModelPath = "trisign_cost_model.json";

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Options {
  std::size_t n = 0;
  std::string inertia = "natural";
  std::uint64_t seed = 0;
  std::string alg = "higham";
  std::size_t base = 16;
  std::string in_path;
  std::string out_path;
  std::string csv_path;
  std::uint64_t cache_m = 4096;
  std::uint64_t cache_b = 1;
  std::size_t repeat = 5;
  bool check = false;
};

std::optional<std::size_t> parse_inertia(const std::string& s, std::size_t n) {
  if (s == "natural") return std::nullopt;
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size() || v < 0 || std::size_t(v) > n)
    throw CLI::ValidationError("--inertia",
                               "expected 'natural' or an integer in [0, n]");
  return std::size_t(v);
}

TriMatrix load_or_generate(const Options& o) {
  if (!o.in_path.empty()) return read_matrix_file(o.in_path);
  if (o.n == 0)
    throw CLI::ValidationError("--n", "required when no --in file is given");
  return gen_triangular(
      {.n = o.n, .k = parse_inertia(o.inertia, o.n), .seed = o.seed});
}

std::vector<Algorithm> resolve_algorithms(const std::string& tag,
                                          const TriMatrix& t) {
  if (tag == "all")
    return {Algorithm::Parlett, Algorithm::Higham, Algorithm::Sylvester,
            Algorithm::RecursiveMM, Algorithm::RecursiveAE};
  if (tag == "auto") {
    CostModel model;
    if (auto loaded = load_cost_model(kCostModelPath)) {
      model = *loaded;
    } else {
      std::cerr << "calibrating cost model (first auto run), saving to "
                << kCostModelPath << "\n";
      model = calibrate_cost_model();
      save_cost_model(model, kCostModelPath);
    }
    const Algorithm pick = choose_algorithm(t, model);
    std::cerr << "auto: selected " << algorithm_tag(pick) << "\n";
    return {pick};
  }
  if (auto a = parse_algorithm_tag(tag)) return {*a};
  throw CLI::ValidationError("--alg", "unknown algorithm tag '" + tag + "'");
}

SignResult run_algorithm(Algorithm a, const TriMatrix& t, std::size_t base,
                         MemTracer* tracer) {
  switch (a) {
    case Algorithm::Parlett: {
      SignResult r{TriMatrix(t.n()), {}, 0, 0};
      r.u = parlett_function(t, scalar_sign, r.stats);
      return r;
    }
    case Algorithm::Higham: return parlett_higham_sign(t, tracer);
    case Algorithm::Sylvester: return parlett_sylvester_sign(t);
    case Algorithm::RecursiveMM: return sign_recursive_mm(t, base, tracer);
    case Algorithm::RecursiveAE: return sign_recursive_ae(t, base, tracer);
  }
  throw std::logic_error("unreachable");
}

struct CsvWriter {
  std::ofstream file;
  std::ostream* os = nullptr;

  explicit CsvWriter(const std::string& path) {
    if (path.empty() || path == "-") {
      os = &std::cout;
    } else {
      file.open(path);
      if (!file) throw CLI::ValidationError("--csv", "cannot open " + path);
      os = &file;
    }
    *os << "alg,n,k,seed,wall_s,flops,swaps,sim_words,inv_res,comm_res,"
           "branch_eq1,branch_eq2\n";
  }

  void row(const std::string& alg, std::size_t n, std::size_t k,
           std::uint64_t seed, double wall_s, const SignResult& r,
           double inv_res, double comm_res) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%s,%zu,%zu,%llu,%.6e,%llu,%llu,%llu,%.3e,%.3e,%llu,%llu\n",
                  alg.c_str(), n, k, (unsigned long long)seed, wall_s,
                  (unsigned long long)r.stats.flops,
                  (unsigned long long)r.stats.swaps,
                  (unsigned long long)r.stats.sim_words, inv_res, comm_res,
                  (unsigned long long)r.branch_eq1,
                  (unsigned long long)r.branch_eq2);
    *os << buf;
  }
};

int check_result(const TriMatrix& t, const TriMatrix& u) {
  auto [inv, comm] = residuals(t, u);
  std::cerr << "check: inv_res " << inv << " comm_res " << comm;
  int rc = kExitOk;
  if (inv > 1e-8 || comm > 1e-8) rc = kExitNumerical;
  if (t.n() <= 128) {
    const double d = relative_distance(u, oracle_sign(t));
    std::cerr << " oracle " << d;
    if (d > 1e-6) rc = kExitNumerical;
  }
  std::cerr << (rc == kExitOk ? " ok" : " FAILED") << "\n";
  return rc;
}

int cmd_gen(const Options& o) {
  if (o.in_path.empty() && o.n == 0)
    throw CLI::ValidationError("--n", "gen requires --n");
  TriMatrix t = load_or_generate(o);
  if (o.out_path.empty()) {
    write_matrix(std::cout, t);
  } else {
    write_matrix_file(o.out_path, t);
  }
  return kExitOk;
}

int cmd_sign(const Options& o) {
  TriMatrix t = load_or_generate(o);
  const std::vector<Algorithm> algs = resolve_algorithms(o.alg, t);
  if (algs.size() != 1)
    throw CLI::ValidationError("--alg", "sign needs a single algorithm");
  SignResult r = run_algorithm(algs[0], t, o.base, nullptr);
  if (o.out_path.empty()) {
    write_matrix(std::cout, r.u);
  } else {
    write_matrix_file(o.out_path, r.u);
  }
  if (o.check) return check_result(t, r.u);
  return kExitOk;
}

int cmd_bench(const Options& o) {
  TriMatrix t = load_or_generate(o);
  const std::size_t k = inertia_of(t).n_minus;
  CsvWriter csv(o.csv_path);
  int rc = kExitOk;
  for (Algorithm a : resolve_algorithms(o.alg, t)) {
    run_algorithm(a, t, o.base, nullptr);  // warmup
    std::vector<double> walls;
    SignResult last{TriMatrix(1), {}, 0, 0};
    for (std::size_t rep = 0; rep < std::max<std::size_t>(1, o.repeat); ++rep) {
      const double t0 = now_s();
      last = run_algorithm(a, t, o.base, nullptr);
      walls.push_back(now_s() - t0);
    }
    std::sort(walls.begin(), walls.end());
    const double median = walls[walls.size() / 2];
    auto [inv, comm] = residuals(t, last.u);
    csv.row(algorithm_tag(a), t.n(), k, o.seed, median, last, inv, comm);
    if (o.check && check_result(t, last.u) != kExitOk) rc = kExitNumerical;
  }
  return rc;
}

int cmd_simcache(const Options& o) {
  TriMatrix t = load_or_generate(o);
  const std::size_t k = inertia_of(t).n_minus;
  CsvWriter csv(o.csv_path);
  for (Algorithm a : resolve_algorithms(o.alg, t)) {
    if (a == Algorithm::Parlett || a == Algorithm::Sylvester) {
      std::cerr << "simcache: no instrumentation for " << algorithm_tag(a)
                << ", skipping\n";
      continue;
    }
    LruCacheSim sim({.m_words = o.cache_m, .b_words = o.cache_b});
    const double t0 = now_s();
    SignResult r = run_algorithm(a, t, o.base, &sim);
    const double wall = now_s() - t0;
    r.stats.sim_words = sim.finish();
    auto [inv, comm] = residuals(t, r.u);
    csv.row(algorithm_tag(a), t.n(), k, o.seed, wall, r, inv, comm);
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "matrix dimension (when generating)");
  sub->add_option("--inertia", o.inertia,
                  "number of negative-real-part eigenvalues, or 'natural'");
  sub->add_option("--seed", o.seed, "generator seed");
  sub->add_option("--in", o.in_path, "read the matrix from this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sign function of upper-triangular complex matrices: generator, five "
      "algorithms, benchmark harness, cache simulator"};
  app.require_subcommand(0, 1);

  bool list_algs = false;
  app.add_flag("--list-algs", list_algs, "print the algorithm tags and exit");

  Options o;
  CLI::App* gen = app.add_subcommand("gen", "generate a test matrix");
  add_common(gen, o);
  gen->add_option("--out", o.out_path, "output path (default: stdout)");

  CLI::App* sign = app.add_subcommand("sign", "compute the sign function");
  add_common(sign, o);
  sign->add_option("--alg", o.alg, "algorithm tag, or 'auto'");
  sign->add_option("--base", o.base, "recursion leaf size");
  sign->add_option("--out", o.out_path, "output path (default: stdout)");
  sign->add_flag("--check", o.check,
                 "verify residuals (and the oracle at n <= 128)");

  CLI::App* bench = app.add_subcommand("bench", "median-of-r timing to CSV");
  add_common(bench, o);
  bench->add_option("--alg", o.alg, "algorithm tag, 'auto', or 'all'");
  bench->add_option("--base", o.base, "recursion leaf size");
  bench->add_option("--csv", o.csv_path, "CSV path (default: stdout)");
  bench->add_option("--repeat", o.repeat, "timed repetitions (median taken)");
  bench->add_flag("--check", o.check, "also verify each result");

  CLI::App* simcache =
      app.add_subcommand("simcache", "replay through the LRU cache simulator");
  add_common(simcache, o);
  simcache->add_option("--alg", o.alg, "instrumented algorithm tag or 'all'");
  simcache->add_option("--base", o.base, "recursion leaf size");
  simcache->add_option("--csv", o.csv_path, "CSV path (default: stdout)");
  simcache->add_option("--cache-m", o.cache_m, "cache capacity in words");
  simcache->add_option("--cache-b", o.cache_b, "cache line size in words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list_algs) {
      for (Algorithm a :
           {Algorithm::Parlett, Algorithm::Higham, Algorithm::Sylvester,
            Algorithm::RecursiveMM, Algorithm::RecursiveAE})
        std::cout << algorithm_tag(a) << "\n";
      return kExitOk;
    }
    if (gen->parsed()) return cmd_gen(o);
    if (sign->parsed()) return cmd_sign(o);
    if (bench->parsed()) return cmd_bench(o);
    if (simcache->parsed()) return cmd_simcache(o);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
