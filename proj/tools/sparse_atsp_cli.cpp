#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sparse_atsp/algebraic.hpp"
#include "sparse_atsp/branching.hpp"
#include "sparse_atsp/cycle_cover.hpp"
#include "sparse_atsp/generators.hpp"
#include "sparse_atsp/graph.hpp"
#include "sparse_atsp/mim.hpp"
#include "sparse_atsp/oracle.hpp"
#include "sparse_atsp/portfolio.hpp"
#include "sparse_atsp/reductions.hpp"

namespace {

using namespace sparse_atsp;
using nlohmann::json;

constexpr int kExitSolved = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitResource = 4;

WeightedDigraph load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string forced_label(const std::string& cli_algo) {
  return cli_algo == "branch" ? "branch+" : cli_algo;
}

struct Report {
  TourSolution sol;
  std::string algorithm;
  double elapsed_ms = 0.0;
  double metric = 0.0;
  std::optional<long long> branch_nodes;
  std::optional<long long> dict_entries;
};

// Runs one solver by its report label and collects its per-algorithm quality
// metric: branch nodes against the recursion-tree bound, dictionary families
// against their size bound, enumerated covers against the Bregman-Minc cap.
Report run_labelled(const WeightedDigraph& g, const std::string& label, long long memory_cap) {
  Report r;
  r.algorithm = label;
  auto t0 = std::chrono::steady_clock::now();
  if (label == "held-karp" || label == "held-karp-fallback") {
    r.sol = held_karp(g);
  } else if (label == "brute") {
    r.sol = brute_force(g);
  } else if (label == "enumcc") {
    CcStats cs;
    r.sol = solve_enumcc(g, &cs);
    double cap = bregman_bound(g);
    r.metric = cap > 0.0 ? static_cast<double>(cs.covers) / cap : 0.0;
  } else if (label == "branch+") {
    auto [sol, st] = solve_branching(g);
    r.sol = sol;
    r.branch_nodes = st.branch_nodes;
    r.metric = st.bound > 0.0 ? static_cast<double>(st.branch_nodes) / st.bound : 0.0;
  } else if (label == "mim") {
    MimOptions opts;
    opts.max_dict_entries = memory_cap;
    MimStats st;
    r.sol = solve_mim(g, opts, &st);
    r.dict_entries = st.dict_entries;
    r.metric = st.family_bound_ratio;
  } else {
    throw std::runtime_error("unknown algorithm " + label);
  }
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void print_solve_report(const Report& r, bool as_json) {
  if (as_json) {
    json j;
    j["status"] = r.sol.optimal() ? "optimal" : "infeasible";
    if (r.sol.optimal()) {
      j["weight"] = r.sol.weight;
      json tour = json::array();
      for (int v : r.sol.tour) tour.push_back(v + 1);
      j["tour"] = tour;
    }
    j["algorithm"] = r.algorithm;
    if (r.branch_nodes) j["branch_nodes"] = *r.branch_nodes;
    if (r.dict_entries) j["dict_entries"] = *r.dict_entries;
    j["elapsed_ms"] = r.elapsed_ms;
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "status " << (r.sol.optimal() ? "optimal" : "infeasible") << '\n';
  if (r.sol.optimal()) {
    std::cout << "weight " << r.sol.weight << '\n' << "tour";
    for (int v : r.sol.tour) std::cout << ' ' << v + 1;
    std::cout << '\n';
  }
  std::cout << "algorithm " << r.algorithm << '\n';
  if (r.branch_nodes) std::cout << "branch_nodes " << *r.branch_nodes << '\n';
  if (r.dict_entries) std::cout << "dict_entries " << *r.dict_entries << '\n';
  std::cout << "elapsed_ms " << fmt(r.elapsed_ms) << '\n';
}

struct SolveArgs {
  std::string file;
  std::string algo = "auto";
  std::string mode = "atsp-polyspace";
  bool as_json = false;
  long long memory_cap = 0;
};

int run_solve(const SolveArgs& a) {
  WeightedDigraph g = load_instance(a.file);
  std::string label;
  if (a.algo == "auto") {
    Algo sel = select_algorithm(g, *mode_from_name(a.mode));
    if (sel == Algo::Algebraic) {
      std::cerr << "error: at this density the " << a.mode
                << " policy picks the decision sieve, which cannot optimise weights; "
                   "use the decide subcommand\n";
      return kExitUsage;
    }
    label = algo_name(sel);
  } else if (a.algo == "algebraic") {
    std::cerr << "error: the algebraic sieve only decides Hamiltonicity; use the decide "
                 "subcommand\n";
    return kExitUsage;
  } else {
    label = forced_label(a.algo);
  }
  Report r = run_labelled(g, label, a.memory_cap);
  print_solve_report(r, a.as_json);
  return r.sol.optimal() ? kExitSolved : kExitInfeasible;
}

struct DecideArgs {
  std::string file;
  std::string algo = "auto";
  std::string mode = "ham-polyspace";
  bool as_json = false;
  int trials = 1;
  std::uint64_t seed = 0;
  long long memory_cap = 0;
};

int run_decide(const DecideArgs& a) {
  WeightedDigraph g = load_instance(a.file);
  std::string label = a.algo == "auto"
                          ? algo_name(select_algorithm(g, *mode_from_name(a.mode)))
                          : forced_label(a.algo);
  bool yes = false;
  double elapsed = 0.0;
  std::optional<int> trials_used;
  if (label == "algebraic") {
    std::cerr << "note: arc weights are ignored by the hamiltonicity sieve\n";
    auto t0 = std::chrono::steady_clock::now();
    yes = decide_hamiltonicity(g, a.trials, a.seed) == Decision::Yes;
    elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
    trials_used = a.trials;
  } else {
    Report r = run_labelled(g, label, a.memory_cap);
    yes = r.sol.optimal();
    elapsed = r.elapsed_ms;
  }
  if (a.as_json) {
    json j;
    j["status"] = yes ? "yes" : "no";
    j["algorithm"] = label;
    if (trials_used) j["trials"] = *trials_used;
    j["elapsed_ms"] = elapsed;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "status " << (yes ? "yes" : "no") << '\n'
              << "algorithm " << label << '\n';
    if (trials_used) std::cout << "trials " << *trials_used << '\n';
    std::cout << "elapsed_ms " << fmt(elapsed) << '\n';
  }
  return yes ? kExitSolved : kExitInfeasible;
}

struct GenArgs {
  std::string kind;
  int n = 0;
  long long m = -1;
  long long extra = 0;
  std::uint64_t seed = 0;
  std::int64_t wmin = 1;
  std::int64_t wmax = 10;
};

int run_gen(const GenArgs& a) {
  WeightRange wr{a.wmin, a.wmax};
  WeightedDigraph g = [&] {
    if (a.kind == "random") {
      if (a.m < 0) throw std::runtime_error("--kind random needs --m");
      return gen_random(a.n, a.m, wr, a.seed);
    }
    if (a.kind == "22") return gen_22(a.n, a.seed, wr);
    if (a.kind == "planted") return gen_planted(a.n, a.extra, wr, a.seed);
    return gen_totdeg3(a.n, a.seed, wr);
  }();
  std::cout << serialize_instance(g);
  return kExitSolved;
}

struct ReduceArgs {
  std::string file;
  std::string target;
};

int run_reduce(const ReduceArgs& a) {
  WeightedDigraph g = load_instance(a.file);
  if (a.target == "bfm") {
    std::cout << serialize_bfm(atsp_to_bfm(g));
  } else if (a.target == "tsp") {
    std::cout << serialize_tsp(bfm_to_tsp(atsp_to_bfm(g)));
  } else if (a.target == "totdeg3") {
    std::cout << serialize_instance(orient_22_to_totdeg3(g));
  } else {  // 22
    Reduce22Result r = totdeg3_to_22(g);
    if (!r.feasible) {
      std::cerr << "infeasible: a forced contraction emptied a vertex\n";
      return kExitInfeasible;
    }
    std::cout << "c contracted weight " << r.contracted_weight << '\n'
              << serialize_instance(r.graph);
  }
  return kExitSolved;
}

struct StatsArgs {
  std::string file;
  bool as_json = false;
};

int run_stats(const StatsArgs& a) {
  WeightedDigraph g = load_instance(a.file);
  DegreeProfile p = degree_profile(g);
  if (a.as_json) {
    json j;
    j["n"] = p.n;
    j["m"] = p.m;
    j["d"] = p.d();
    j["s_out"] = p.s_out;
    j["s_in"] = p.s_in;
    j["outdeg_histogram"] = p.t;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n " << p.n << '\n'
              << "m " << p.m << '\n'
              << "d " << fmt(p.d()) << '\n'
              << "s_out " << p.s_out << '\n'
              << "s_in " << p.s_in << '\n';
    for (std::size_t i = 0; i < p.t.size(); ++i)
      if (p.t[i]) std::cout << "outdeg_" << i << ' ' << p.t[i] << '\n';
  }
  return kExitSolved;
}

int run_crossovers(bool as_json) {
  std::vector<Crossover> table = compute_crossovers();
  if (as_json) {
    json arr = json::array();
    for (const Crossover& c : table)
      arr.push_back({{"cheap_below", curve_name(c.cheap_below)},
                     {"cheap_above", curve_name(c.cheap_above)},
                     {"d", c.d}});
    std::cout << arr.dump(2) << '\n';
  } else {
    for (const Crossover& c : table)
      std::cout << curve_name(c.cheap_below) << ' ' << curve_name(c.cheap_above) << ' '
                << fmt(c.d) << '\n';
  }
  return kExitSolved;
}

struct BenchArgs {
  std::string cls = "random";
  int n = 10;
  double d = 2.5;
  int seeds = 3;
  std::uint64_t seed0 = 0;
  std::vector<std::string> algos{"branch", "enumcc"};
  long long memory_cap = 0;
};

WeightedDigraph bench_instance(const BenchArgs& a, std::uint64_t seed) {
  WeightRange wr;
  long long target_m = std::llround(a.d * a.n);
  if (a.cls == "random") {
    long long max_m = static_cast<long long>(a.n) * (a.n - 1);
    return gen_random(a.n, std::min(target_m, max_m), wr, seed);
  }
  if (a.cls == "planted") return gen_planted(a.n, std::max(0LL, target_m - a.n), wr, seed);
  if (a.cls == "22") return gen_22(a.n, seed, wr);
  return gen_totdeg3(a.n, seed, wr);
}

int run_bench(const BenchArgs& a) {
  std::cout << "instance,algo,n,m,d,weight,metric,elapsed_ms\n";
  for (int s = 0; s < a.seeds; ++s) {
    std::uint64_t seed = a.seed0 + static_cast<std::uint64_t>(s);
    WeightedDigraph g = bench_instance(a, seed);
    DegreeProfile p = degree_profile(g);
    std::string id = a.cls + "-n" + std::to_string(a.n) + "-d" + fmt(a.d) + "-s" +
                     std::to_string(seed);
    for (const std::string& algo : a.algos) {
      Report r = run_labelled(g, forced_label(algo), a.memory_cap);
      std::cout << id << ',' << r.algorithm << ',' << p.n << ',' << p.m << ',' << fmt(p.d())
                << ',' << (r.sol.optimal() ? std::to_string(r.sol.weight) : "") << ','
                << fmt(r.metric) << ',' << fmt(r.elapsed_ms) << '\n';
    }
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers for sparse asymmetric TSP and directed Hamiltonicity"};
  app.require_subcommand(1);

  const std::vector<std::string> algo_values{"auto",   "held-karp", "brute",    "enumcc",
                                             "branch", "mim",       "algebraic"};
  const std::vector<std::string> mode_values{"atsp-polyspace", "atsp-expspace",
                                             "ham-polyspace", "ham-expspace"};

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "find a minimum-weight tour");
  solve->add_option("instance", solve_args.file, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--algo", solve_args.algo, "solver to run, or auto for the portfolio")
      ->check(CLI::IsMember(algo_values));
  solve->add_option("--mode", solve_args.mode, "portfolio policy used by --algo auto")
      ->check(CLI::IsMember(mode_values));
  solve->add_flag("--json", solve_args.as_json, "emit a JSON report");
  solve->add_option("--memory-cap", solve_args.memory_cap,
                    "abort mim if a dictionary exceeds this many entries");

  DecideArgs decide_args;
  CLI::App* decide = app.add_subcommand("decide", "test for a Hamiltonian cycle");
  decide->add_option("instance", decide_args.file, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  decide->add_option("--algo", decide_args.algo, "decision procedure, or auto for the portfolio")
      ->check(CLI::IsMember(algo_values));
  decide->add_option("--mode", decide_args.mode, "portfolio policy used by --algo auto")
      ->check(CLI::IsMember(mode_values));
  decide->add_flag("--json", decide_args.as_json, "emit a JSON report");
  decide->add_option("--trials", decide_args.trials, "sieve evaluations before answering No")
      ->check(CLI::PositiveNumber);
  decide->add_option("--seed", decide_args.seed, "seed for the sieve's random field points");
  decide->add_option("--memory-cap", decide_args.memory_cap,
                     "abort mim if a dictionary exceeds this many entries");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance on stdout");
  gen->add_option("--kind", gen_args.kind, "instance family")
      ->required()
      ->check(CLI::IsMember({"random", "22", "planted", "totdeg3"}));
  gen->add_option("--n", gen_args.n, "vertex count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_args.m, "arc count (random)");
  gen->add_option("--extra", gen_args.extra, "arcs beyond the planted tour (planted)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--min-weight", gen_args.wmin, "smallest arc weight");
  gen->add_option("--max-weight", gen_args.wmax, "largest arc weight");

  ReduceArgs reduce_args;
  CLI::App* reduce = app.add_subcommand("reduce", "rewrite an instance into a reduced form");
  reduce->add_option("instance", reduce_args.file, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  reduce->add_option("--target", reduce_args.target, "reduction to apply")
      ->required()
      ->check(CLI::IsMember({"bfm", "tsp", "totdeg3", "22"}));

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "degree statistics of an instance");
  stats->add_option("instance", stats_args.file, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_flag("--json", stats_args.as_json, "emit JSON");

  bool crossovers_json = false;
  CLI::App* crossovers = app.add_subcommand("crossovers", "density breakpoints of the portfolio");
  crossovers->add_flag("--json", crossovers_json, "emit JSON");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "time solvers over generated instances, CSV out");
  bench->add_option("--class", bench_args.cls, "instance family")
      ->check(CLI::IsMember({"random", "22", "planted", "totdeg3"}));
  bench->add_option("--n", bench_args.n, "vertex count")->check(CLI::PositiveNumber);
  bench->add_option("--d", bench_args.d, "target average outdegree");
  bench->add_option("--seeds", bench_args.seeds, "number of instances")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed0, "first seed");
  bench->add_option("--algo", bench_args.algos, "solvers to time (repeatable)")
      ->check(CLI::IsMember({"held-karp", "brute", "enumcc", "branch", "mim"}));
  bench->add_option("--memory-cap", bench_args.memory_cap,
                    "abort mim if a dictionary exceeds this many entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (decide->parsed()) return run_decide(decide_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (reduce->parsed()) return run_reduce(reduce_args);
    if (stats->parsed()) return run_stats(stats_args);
    if (crossovers->parsed()) return run_crossovers(crossovers_json);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const MemoryBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
