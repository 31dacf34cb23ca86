#include "cnp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace cnp {

using nlohmann::json;

std::string to_string(Mode mode) { return mode == Mode::kCnp ? "cnp" : "cccnp"; }

Mode parse_mode(const std::string& text) {
  if (text == "cnp") return Mode::kCnp;
  if (text == "cccnp") return Mode::kCcCnp;
  throw std::invalid_argument("unknown mode '" + text + "' (expected cnp or cccnp)");
}

KbvTable KbvTable::from_json(const json& doc) {
  KbvTable table;
  auto read = [](const json& section, const char* key, std::map<std::string, KnownBest>& into) {
    for (const auto& [name, entry] : section.items())
      into[name] = KnownBest{entry.at(key).get<std::int64_t>(), entry.at("kbv").get<std::int64_t>()};
  };
  if (doc.contains("cnp")) read(doc.at("cnp"), "k", table.cnp_);
  if (doc.contains("cccnp")) read(doc.at("cccnp"), "w", table.cccnp_);
  return table;
}

KbvTable KbvTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open known-best table '" + path + "'");
  return from_json(json::parse(in));
}

std::optional<KnownBest> KbvTable::lookup(Mode mode, const std::string& instance) const {
  const auto& table = mode == Mode::kCnp ? cnp_ : cccnp_;
  auto it = table.find(instance);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::size_t KbvTable::size(Mode mode) const { return mode == Mode::kCnp ? cnp_.size() : cccnp_.size(); }

Verdict validate_solution(const Graph& graph, const SolutionRecord& record, const Objective& objective,
                          std::optional<std::size_t> expected_size) {
  std::set<NodeId> seen;
  for (NodeId v : record.nodes) {
    if (v < 0 || v >= graph.num_nodes())
      throw RangeError("node id " + std::to_string(v) + " outside [0, " + std::to_string(graph.num_nodes() - 1) + "]");
    if (!seen.insert(v).second) throw std::invalid_argument("node id " + std::to_string(v) + " repeats");
  }
  if (expected_size && record.nodes.size() != *expected_size)
    throw std::invalid_argument("solution has " + std::to_string(record.nodes.size()) + " nodes, expected " +
                                std::to_string(*expected_size));
  Verdict verdict;
  verdict.size = record.nodes.size();
  verdict.stored = record.objective;
  verdict.recomputed = evaluate_set(graph, record.nodes, objective);
  verdict.ok = verdict.stored == verdict.recomputed;
  return verdict;
}

void CampaignConfig::validate() const {
  if (instances.empty()) throw std::invalid_argument("no instance given");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (mode == Mode::kCnp && k < 1) throw std::invalid_argument("k must be >= 1");
  if (mode == Mode::kCcCnp && w < 1) throw std::invalid_argument("w must be >= 1");
  params.validate();
}

std::string instance_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

TrialRecord run_trial(const Graph& graph, const CampaignConfig& config, int trial) {
  TrialRecord record;
  record.trial = trial;
  record.seed = config.base_seed + static_cast<std::uint64_t>(trial);
  Rng rng(record.seed);
  const Deadline deadline = config.timed() ? Deadline::after(config.time_limit) : Deadline::never();

  if (config.mode == Mode::kCnp) {
    if (config.k >= graph.num_nodes())
      throw std::invalid_argument("k must be smaller than the node count " + std::to_string(graph.num_nodes()));
    MemeticResult r = macnp(graph, Objective::pairwise(), static_cast<std::size_t>(config.k), config.params, rng, deadline);
    record.value = r.best.objective;
    record.solution = std::move(r.best.nodes);
    record.time_to_best = r.time_to_best;
    record.steps_to_best = r.steps_to_best;
    record.total_steps = r.total_steps;
    record.generations = r.generations;
    record.elapsed = r.elapsed;
  } else {
    Stopwatch watch;
    CapResult r = maccc(graph, config.w, config.params, rng, deadline);
    record.value = r.k_best;
    record.solution = std::move(r.nodes);
    record.trajectory = std::move(r.trajectory);
    record.time_to_best = r.time_to_best;
    record.steps_to_best = r.steps_to_best;
    record.total_steps = r.total_steps;
    record.generations = r.generations;
    record.elapsed = watch.seconds();
  }
  return record;
}

RunReport aggregate(std::string instance, const Graph& graph, const CampaignConfig& config,
                    std::vector<TrialRecord> trials, const KbvTable* kbv) {
  RunReport report;
  report.instance = std::move(instance);
  report.mode = config.mode;
  report.parameter = config.mode == Mode::kCnp ? config.k : config.w;
  report.nodes = graph.num_nodes();
  report.edges = graph.num_edges();
  report.sparsity = sparsity_beta(graph);
  report.base_seed = config.base_seed;
  report.trials = std::move(trials);

  if (!report.trials.empty()) {
    double sum = 0.0, time_sum = 0.0, step_sum = 0.0;
    report.f_best = report.trials.front().value;
    for (const auto& t : report.trials) {
      report.f_best = std::min(report.f_best, t.value);
      sum += static_cast<double>(t.value);
      time_sum += t.time_to_best;
      step_sum += static_cast<double>(t.steps_to_best);
    }
    const double count = static_cast<double>(report.trials.size());
    report.f_avg = sum / count;
    report.steps = step_sum / count;
    if (config.timed()) report.t_avg = time_sum / count;
  }

  if (kbv) {
    if (auto known = kbv->lookup(config.mode, report.instance); known && known->parameter == report.parameter) {
      report.kbv = known->value;
      report.gap = static_cast<std::int64_t>(report.f_best) - known->value;
      report.gap_avg = report.f_avg - static_cast<double>(known->value);
    }
  }
  return report;
}

std::vector<RunReport> run_campaign(const CampaignConfig& config) {
  config.validate();
  std::optional<KbvTable> kbv;
  if (config.kbv_path) kbv = KbvTable::load(*config.kbv_path);

  LoadOptions options;
  options.one_indexed = config.one_indexed;
  std::vector<RunReport> reports;
  for (const auto& path : config.instances) {
    const Graph graph = load_graph_file(path, options);
    std::vector<TrialRecord> trials(static_cast<std::size_t>(config.trials));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (int t = next++; t < config.trials; t = next++) {
        try {
          trials[static_cast<std::size_t>(t)] = run_trial(graph, config, t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const int workers = std::min(config.threads, config.trials);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    reports.push_back(aggregate(instance_name(path), graph, config, std::move(trials), kbv ? &*kbv : nullptr));
  }
  return reports;
}

json to_json(const CampaignConfig& config, const std::vector<RunReport>& reports) {
  const bool timed = config.timed();
  json cfg = {
      {"mode", to_string(config.mode)},
      {"trials", config.trials},
      {"base_seed", config.base_seed},
      {"pop_size", config.params.pop_size},
      {"max_iter", config.params.max_iter},
      {"p0", config.params.p0},
      {"pool_beta", config.params.pool_beta},
      {"node_weighting", config.params.node_weighting},
      {"double_backbone", config.params.double_backbone},
  };
  if (config.mode == Mode::kCnp)
    cfg["k"] = config.k;
  else
    cfg["w"] = config.w;
  if (timed)
    cfg["time_limit"] = config.time_limit;
  else
    cfg["generations"] = *config.params.generations;

  json out = {{"config", cfg}, {"reports", json::array()}};
  for (const auto& r : reports) {
    json jr = {
        {"instance", r.instance},
        {"mode", to_string(r.mode)},
        {r.mode == Mode::kCnp ? "k" : "w", r.parameter},
        {"n", r.nodes},
        {"m", r.edges},
        {"sparsity_beta", r.sparsity},
        {"base_seed", r.base_seed},
        {"f_best", r.f_best},
        {"f_avg", r.f_avg},
        {"steps", r.steps},
    };
    jr["t_avg"] = r.t_avg ? json(*r.t_avg) : json(nullptr);
    jr["kbv"] = r.kbv ? json(*r.kbv) : json(nullptr);
    jr["gap"] = r.gap ? json(*r.gap) : json(nullptr);
    jr["gap_avg"] = r.gap_avg ? json(*r.gap_avg) : json(nullptr);
    json trials = json::array();
    for (const auto& t : r.trials) {
      json jt = {
          {"trial", t.trial},
          {"seed", t.seed},
          {r.mode == Mode::kCnp ? "f" : "k_best", t.value},
          {"steps_to_best", t.steps_to_best},
          {"total_steps", t.total_steps},
          {"generations", t.generations},
          {"solution", t.solution},
      };
      if (timed) {
        jt["time_to_best"] = t.time_to_best;
        jt["elapsed"] = t.elapsed;
      }
      if (r.mode == Mode::kCcCnp) {
        json levels = json::array();
        for (const auto& level : t.trajectory) {
          json jl = {{"k", level.k}, {"excess", level.excess}, {"feasible", level.feasible}};
          if (timed) jl["seconds"] = level.seconds;
          levels.push_back(std::move(jl));
        }
        jt["trajectory"] = std::move(levels);
      }
      trials.push_back(std::move(jt));
    }
    jr["trials"] = std::move(trials);
    out["reports"].push_back(std::move(jr));
  }
  return out;
}

namespace {

std::string optional_text(const std::optional<double>& v, int precision) {
  if (!v) return "";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

std::string optional_text(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  out << "instance,mode,param,n,m,trials,f_best,f_avg,t_avg,steps,kbv,gap,gap_avg\n";
  for (const auto& r : reports) {
    out << r.instance << ',' << to_string(r.mode) << ',' << r.parameter << ',' << r.nodes << ',' << r.edges << ','
        << r.trials.size() << ',' << r.f_best << ',' << optional_text(r.f_avg, 2) << ',' << optional_text(r.t_avg, 2)
        << ',' << optional_text(r.steps, 1) << ',' << optional_text(r.kbv) << ',' << optional_text(r.gap) << ','
        << optional_text(r.gap_avg, 2) << '\n';
  }
}

void print_table(std::ostream& out, const std::vector<RunReport>& reports) {
  out << std::left << std::setw(14) << "Instance" << std::right << std::setw(7) << "K/W" << std::setw(10) << "KBV"
      << std::setw(12) << "f_best" << std::setw(14) << "f_avg" << std::setw(10) << "df_best" << std::setw(12)
      << "df_avg" << std::setw(10) << "t_avg" << std::setw(12) << "#steps" << '\n';
  for (const auto& r : reports) {
    std::ostringstream steps;
    steps << std::scientific << std::setprecision(1) << r.steps;
    out << std::left << std::setw(14) << r.instance << std::right << std::setw(7) << r.parameter << std::setw(10)
        << optional_text(r.kbv) << std::setw(12) << r.f_best << std::setw(14) << optional_text(r.f_avg, 1)
        << std::setw(10) << optional_text(r.gap) << std::setw(12) << optional_text(r.gap_avg, 1) << std::setw(10)
        << optional_text(r.t_avg, 1) << std::setw(12) << steps.str() << '\n';
  }
}

std::vector<ReportSummary> read_report(const json& doc) {
  std::vector<ReportSummary> out;
  for (const auto& r : doc.at("reports")) {
    ReportSummary s;
    s.instance = r.at("instance").get<std::string>();
    s.mode = r.at("mode").get<std::string>();
    s.parameter = r.contains("k") ? r.at("k").get<std::int64_t>() : r.at("w").get<std::int64_t>();
    s.f_best = r.at("f_best").get<double>();
    s.f_avg = r.at("f_avg").get<double>();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace cnp
