#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cnp/cccnp.hpp"
#include "cnp/memetic.hpp"

namespace cnp {

enum class Mode { kCnp, kCcCnp };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

// ---------------------------------------------------------------------------
// Exhaustive oracle

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  std::uint64_t objective = 0;
  std::vector<NodeId> nodes;
};

/// Binomial coefficient saturated at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Exact minimum of the objective over every k-subset, visited in
/// lexicographic order (the first optimum found is returned). Refuses with
/// SizeGuardError when C(n, k) exceeds `limit`.
OracleResult brute_force_optimum(const Graph& graph, std::size_t k, const Objective& objective = Objective::pairwise(),
                                 std::uint64_t limit = 1'000'000);

// ---------------------------------------------------------------------------
// Sign test

/// Smallest win count c with P(Bin(x, 1/2) >= c) <= alpha / 2.
int binomial_critical_value(int instances, double alpha = 0.05);

struct CriticalValue {
  int value = 0;
  std::string source;  // "table" or "binomial"
};

/// Two-tailed critical value at the 0.05 level: a fixed table for 16
/// and 26 instances, the exact binomial value otherwise.
CriticalValue sign_test_critical_value(int instances);

struct SignTestResult {
  double wins_a = 0.0;
  double wins_b = 0.0;
  int instances = 0;
  CriticalValue critical;
  int critical_binomial = 0;
  bool a_significant = false;
  bool b_significant = false;
};

/// Paired comparison of minimization results; ties count half for each side.
SignTestResult sign_test_wins(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Known best values

struct KnownBest {
  std::int64_t parameter = 0;  // K for cnp, W for cccnp
  std::int64_t value = 0;      // objective for cnp, number of deleted nodes for cccnp
};

class KbvTable {
 public:
  static KbvTable from_json(const nlohmann::json& doc);
  static KbvTable load(const std::string& path);

  std::optional<KnownBest> lookup(Mode mode, const std::string& instance) const;
  std::size_t size(Mode mode) const;

 private:
  std::map<std::string, KnownBest> cnp_;
  std::map<std::string, KnownBest> cccnp_;
};

// ---------------------------------------------------------------------------
// Validation

struct Verdict {
  bool ok = false;
  std::uint64_t stored = 0;
  std::uint64_t recomputed = 0;
  std::size_t size = 0;
};

/// Recomputes the objective of a stored solution. Throws RangeError for ids
/// outside the graph and std::invalid_argument when |S| differs from
/// `expected_size` or ids repeat.
Verdict validate_solution(const Graph& graph, const SolutionRecord& record, const Objective& objective,
                          std::optional<std::size_t> expected_size);

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignConfig {
  std::vector<std::string> instances;
  Mode mode = Mode::kCnp;
  std::int64_t k = 0;  // cnp
  std::int64_t w = 0;  // cccnp
  int trials = 1;
  std::uint64_t base_seed = 1;
  double time_limit = 3600.0;
  MemeticParams params;
  int threads = 1;
  bool one_indexed = false;
  std::optional<std::string> kbv_path;

  void validate() const;
  bool timed() const { return !params.generations.has_value(); }
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t value = 0;  // f for cnp, K for cccnp
  double time_to_best = 0.0;
  std::uint64_t steps_to_best = 0;
  std::uint64_t total_steps = 0;
  std::int64_t generations = 0;
  double elapsed = 0.0;
  std::vector<NodeId> solution;
  std::vector<CapLevel> trajectory;  // cccnp only
};

struct RunReport {
  std::string instance;
  Mode mode = Mode::kCnp;
  std::int64_t parameter = 0;  // K or W
  NodeId nodes = 0;
  std::int64_t edges = 0;
  double sparsity = 0.0;
  std::uint64_t base_seed = 0;
  std::uint64_t f_best = 0;
  double f_avg = 0.0;
  std::optional<double> t_avg;
  double steps = 0.0;  // mean steps to best
  std::optional<std::int64_t> kbv;
  std::optional<std::int64_t> gap;
  std::optional<double> gap_avg;
  std::vector<TrialRecord> trials;
};

std::string instance_name(const std::string& path);

/// Runs one seeded trial (seed = base_seed + trial).
TrialRecord run_trial(const Graph& graph, const CampaignConfig& config, int trial);

/// Aggregates per-trial records into a report (f_best = min, f_avg = mean).
RunReport aggregate(std::string instance, const Graph& graph, const CampaignConfig& config,
                    std::vector<TrialRecord> trials, const KbvTable* kbv);

std::vector<RunReport> run_campaign(const CampaignConfig& config);

/// Machine-readable campaign output. Wall-clock fields are emitted only for
/// time-limited runs so that generation-capped runs are byte-reproducible.
nlohmann::json to_json(const CampaignConfig& config, const std::vector<RunReport>& reports);
void write_csv(std::ostream& out, const std::vector<RunReport>& reports);
void print_table(std::ostream& out, const std::vector<RunReport>& reports);

/// Per-instance values read back from a campaign JSON document.
struct ReportSummary {
  std::string instance;
  std::string mode;
  std::int64_t parameter = 0;
  double f_best = 0.0;
  double f_avg = 0.0;
};

std::vector<ReportSummary> read_report(const nlohmann::json& doc);

}  // namespace cnp
