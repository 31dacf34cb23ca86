// Command-line front-end: solve, validate, oracle, compare.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "cnp/harness.hpp"

namespace {

using namespace cnp;

struct SolveArgs {
  std::vector<std::string> instances;
  std::string mode = "cnp";
  std::int64_t k = 0;
  std::int64_t w = 0;
  double time_limit = 3600.0;
  std::int64_t generations = -1;
  int trials = 1;
  std::uint64_t seed = 1;
  int pop_size = 20;
  std::int64_t max_iter = 1000;
  double p0 = 0.85;
  double pool_beta = 0.6;
  std::string out;
  std::string csv;
  int threads = 1;
  bool one_indexed = false;
  std::string kbv;
  bool no_kbv = false;
  std::int64_t target = -1;
  bool no_weighting = false;
  bool single_backbone = false;
  std::string solution_dir;
};

Objective objective_for(const std::string& mode, std::int64_t w) {
  return parse_mode(mode) == Mode::kCnp ? Objective::pairwise() : Objective::excess(w);
}

int run_solve(const SolveArgs& a) {
  CampaignConfig config;
  config.instances = a.instances;
  config.mode = parse_mode(a.mode);
  config.k = a.k;
  config.w = a.w;
  config.trials = a.trials;
  config.base_seed = a.seed;
  config.time_limit = a.time_limit;
  config.threads = a.threads;
  config.one_indexed = a.one_indexed;
  config.params.pop_size = a.pop_size;
  config.params.max_iter = a.max_iter;
  config.params.p0 = a.p0;
  config.params.pool_beta = a.pool_beta;
  config.params.node_weighting = !a.no_weighting;
  config.params.double_backbone = !a.single_backbone;
  if (a.generations >= 0) config.params.generations = a.generations;
  if (a.target >= 0) config.params.target = static_cast<std::uint64_t>(a.target);
  if (!a.kbv.empty()) {
    config.kbv_path = a.kbv;
  } else if (!a.no_kbv && std::filesystem::exists(CNP_DEFAULT_KBV)) {
    config.kbv_path = CNP_DEFAULT_KBV;
  }
  for (const auto& path : config.instances)
    if (!std::filesystem::exists(path)) throw std::runtime_error("instance file '" + path + "' not found");

  const auto reports = run_campaign(config);
  print_table(std::cout, reports);

  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot write '" + a.out + "'");
    out << to_json(config, reports).dump(2) << '\n';
  }
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw std::runtime_error("cannot write '" + a.csv + "'");
    write_csv(out, reports);
  }
  if (!a.solution_dir.empty()) {
    std::filesystem::create_directories(a.solution_dir);
    const Objective objective = objective_for(a.mode, a.w);
    LoadOptions options;
    options.one_indexed = a.one_indexed;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      const auto best = std::min_element(r.trials.begin(), r.trials.end(),
                                         [](const TrialRecord& x, const TrialRecord& y) { return x.value < y.value; });
      const Graph graph = load_graph_file(config.instances[i], options);
      SolutionRecord record{best->solution, evaluate_set(graph, best->solution, objective)};
      std::ofstream out(std::filesystem::path(a.solution_dir) / (r.instance + ".sol"));
      write_solution(out, record);
    }
  }
  return 0;
}

int run_validate(const std::string& instance, const std::string& solution, const std::string& mode, std::int64_t k,
                 std::int64_t w, bool one_indexed) {
  LoadOptions options;
  options.one_indexed = one_indexed;
  const Graph graph = load_graph_file(instance, options);
  std::ifstream in(solution);
  if (!in) throw std::runtime_error("cannot open solution '" + solution + "'");
  const SolutionRecord record = read_solution(in);
  std::optional<std::size_t> expected;
  if (k > 0) expected = static_cast<std::size_t>(k);
  const Verdict v = validate_solution(graph, record, objective_for(mode, w), expected);
  const char* label = parse_mode(mode) == Mode::kCnp ? "f" : "f'";
  if (v.ok) {
    std::cout << "ok |S|=" << v.size << ' ' << label << '=' << v.recomputed << '\n';
    return 0;
  }
  std::cout << "mismatch |S|=" << v.size << " stored " << label << '=' << v.stored << " recomputed " << label << '='
            << v.recomputed << '\n';
  return 1;
}

int run_oracle(const std::string& instance, std::int64_t k, const std::string& mode, std::int64_t w,
               std::uint64_t limit, bool one_indexed) {
  LoadOptions options;
  options.one_indexed = one_indexed;
  const Graph graph = load_graph_file(instance, options);
  if (k < 0 || k > graph.num_nodes()) throw std::invalid_argument("k outside [0, n]");
  const OracleResult r = brute_force_optimum(graph, static_cast<std::size_t>(k), objective_for(mode, w), limit);
  std::cout << "optimum " << r.objective << "\nnodes";
  for (NodeId v : r.nodes) std::cout << ' ' << v;
  std::cout << '\n';
  return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b, const std::string& metric) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report '" + path + "'");
    return read_report(nlohmann::json::parse(in));
  };
  const auto a = load(path_a);
  const auto b = load(path_b);
  std::map<std::pair<std::string, std::int64_t>, const ReportSummary*> index;
  for (const auto& r : b) index[{r.instance, r.parameter}] = &r;

  std::vector<double> va, vb;
  std::cout << std::left << std::setw(14) << "Instance" << std::right << std::setw(14) << "A" << std::setw(14) << "B"
            << '\n';
  for (const auto& r : a) {
    auto it = index.find({r.instance, r.parameter});
    if (it == index.end()) continue;
    const double x = metric == "avg" ? r.f_avg : r.f_best;
    const double y = metric == "avg" ? it->second->f_avg : it->second->f_best;
    va.push_back(x);
    vb.push_back(y);
    std::cout << std::left << std::setw(14) << r.instance << std::right << std::setw(14) << x << std::setw(14) << y
              << '\n';
  }
  if (va.empty()) throw std::runtime_error("the reports share no instance");
  const SignTestResult s = sign_test_wins(va, vb);
  std::cout << "instances " << s.instances << "\nwins A " << s.wins_a << "\nwins B " << s.wins_b << "\ncritical value "
            << s.critical.value << " (" << s.critical.source << ")";
  if (s.critical.source != "binomial") std::cout << ", binomial " << s.critical_binomial;
  std::cout << "\nA significantly better: " << (s.a_significant ? "yes" : "no")
            << "\nB significantly better: " << (s.b_significant ? "yes" : "no") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memetic solver for the critical node problem and its cardinality-constrained variant"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "run seeded trials on one or more instances");
  s->add_option("--instance", solve.instances, "edge-list instance file(s)")->required()->expected(1, -1);
  s->add_option("--mode", solve.mode, "cnp or cccnp")->check(CLI::IsMember({"cnp", "cccnp"}));
  s->add_option("--k", solve.k, "number of nodes to delete (cnp)");
  s->add_option("--w", solve.w, "component size cap (cccnp)");
  s->add_option("--time-limit", solve.time_limit, "seconds per trial");
  s->add_option("--generations", solve.generations, "stop after this many generations instead of the time limit");
  s->add_option("--trials", solve.trials, "independent trials per instance");
  s->add_option("--seed", solve.seed, "base seed; trial i uses seed + i");
  s->add_option("--pop-size", solve.pop_size);
  s->add_option("--max-iter", solve.max_iter, "idle steps before local search stops");
  s->add_option("--p0", solve.p0, "inheritance probability of exclusive elements");
  s->add_option("--pool-beta", solve.pool_beta, "weight of the objective rank in pool updating");
  s->add_option("--out", solve.out, "JSON report");
  s->add_option("--csv", solve.csv, "CSV summary");
  s->add_option("--threads", solve.threads, "parallel trials");
  s->add_flag("--one-indexed", solve.one_indexed, "instance ids start at 1");
  s->add_option("--kbv", solve.kbv, "known best value table (JSON)");
  s->add_flag("--no-kbv", solve.no_kbv, "skip the bundled known best value table");
  s->add_option("--target", solve.target, "stop a trial once the objective reaches this value");
  s->add_flag("--no-weighting", solve.no_weighting, "pick removal nodes uniformly at random");
  s->add_flag("--single-backbone", solve.single_backbone, "inherit only the common elements");
  s->add_option("--solution-out", solve.solution_dir, "directory for the best solution of each instance");

  std::string instance, solution, mode = "cnp", metric = "best", path_a, path_b;
  std::int64_t k = 0, w = 0;
  std::uint64_t limit = 1'000'000;
  bool one_indexed = false;

  auto* v = app.add_subcommand("validate", "recompute the objective of a solution file");
  v->add_option("--instance", instance)->required();
  v->add_option("--solution", solution)->required();
  v->add_option("--mode", mode)->check(CLI::IsMember({"cnp", "cccnp"}));
  v->add_option("--k", k, "expected number of deleted nodes");
  v->add_option("--w", w, "component size cap (cccnp)");
  v->add_flag("--one-indexed", one_indexed);

  auto* o = app.add_subcommand("oracle", "exact optimum by enumeration (small graphs)");
  o->add_option("--instance", instance)->required();
  o->add_option("--k", k)->required();
  o->add_option("--mode", mode)->check(CLI::IsMember({"cnp", "cccnp"}));
  o->add_option("--w", w);
  o->add_option("--limit", limit, "largest C(n, k) accepted");
  o->add_flag("--one-indexed", one_indexed);

  auto* c = app.add_subcommand("compare", "sign test between two JSON reports");
  c->add_option("--a", path_a)->required();
  c->add_option("--b", path_b)->required();
  c->add_option("--metric", metric, "best or avg")->check(CLI::IsMember({"best", "avg"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s) return run_solve(solve);
    if (*v) return run_validate(instance, solution, mode, k, w, one_indexed);
    if (*o) return run_oracle(instance, k, mode, w, limit, one_indexed);
    if (*c) return run_compare(path_a, path_b, metric);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
