#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cnp/cbns.hpp"
#include "cnp/deadline.hpp"
#include "cnp/random.hpp"
#include "cnp/solution.hpp"

namespace cnp {

struct MemeticParams {
  int pop_size = 20;
  std::int64_t max_iter = 1000;
  double p0 = 0.85;
  double pool_beta = 0.6;
  // Generation cap; unset means run until the deadline.
  std::optional<std::int64_t> generations;
  // Stop once the best objective is at or below this value.
  std::optional<std::uint64_t> target;
  bool node_weighting = true;
  // Off: only the common elements are inherited (single backbone).
  bool double_backbone = true;

  void validate() const;
};

class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A member of the population: sorted deleted set and its objective.
struct Individual {
  std::vector<NodeId> nodes;
  std::uint64_t objective = 0;

  friend bool operator==(const Individual&, const Individual&) = default;
};

Individual snapshot(const SolutionState& state);

struct BackbonePartition {
  std::vector<NodeId> common;     // in both parents
  std::vector<NodeId> exclusive;  // in exactly one parent
  std::vector<NodeId> excluded;   // in neither
};

BackbonePartition partition_backbones(std::span<const NodeId> first, std::span<const NodeId> second, NodeId n);

/// K - |first ∩ second| for two sorted sets of size K.
std::int64_t solution_distance(std::span<const NodeId> first, std::span<const NodeId> second);

struct CrossoverResult {
  SolutionState offspring;
  // Inherited set before the repair step, sorted.
  std::vector<NodeId> inherited;
};

/// Double backbone-based crossover. Common elements are kept, each exclusive
/// element is kept with probability p0 (coins drawn in ascending id order),
/// then the set is repaired to exactly k nodes: nodes are drawn uniformly
/// from a random large component while short, and while over, the
/// second-backbone node with the cheapest reinsertion (ties: smaller id)
/// goes back to the graph.
CrossoverResult double_backbone_crossover(const Graph& graph, const Objective& objective,
                                          std::span<const NodeId> first, std::span<const NodeId> second,
                                          std::size_t k, double p0, Rng& rng, bool double_backbone = true);

/// Fixed-capacity pool of pairwise distinct individuals.
class Population {
 public:
  Population(std::size_t capacity, double pool_beta);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return members_.size(); }
  double pool_beta() const { return pool_beta_; }
  const std::vector<Individual>& members() const { return members_; }
  const Individual& operator[](std::size_t i) const { return members_[i]; }

  bool contains(std::span<const NodeId> nodes) const;
  /// Appends a distinct individual while below capacity.
  void add(Individual individual);

  enum class Outcome { kDuplicate, kDiscarded, kReplaced };

  /// Rank-based update: the offspring joins at index 0, every member of the
  /// enlarged pool is scored, and the worst one leaves. The offspring is
  /// dropped if it is the worst or duplicates a member.
  Outcome update(Individual offspring);

  /// Scores of the pool {offspring} ∪ members (offspring at index 0):
  /// pool_beta * objective rank + (1 - pool_beta) * distance rank. Ranks
  /// start at 1 for the best objective and the largest average distance;
  /// equal values share the lower rank.
  std::vector<double> scores(const Individual& offspring) const;
  /// Index into the enlarged pool of the member with the largest score
  /// (ties: larger objective, then larger index).
  std::size_t worst_index(const Individual& offspring) const;

 private:
  std::size_t capacity_;
  double pool_beta_;
  std::vector<Individual> members_;
};

/// Running best and counters shared by one search trial.
struct SearchProgress {
  Individual best;
  bool has_best = false;
  double time_to_best = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t steps_to_best = 0;
  std::int64_t generations = 0;
  // Objective of the first random k-subset, before any local search.
  std::optional<std::uint64_t> initial_objective;
  Clock::time_point start = Clock::now();
  std::optional<std::uint64_t> target;

  bool offer(const SolutionState& state, Clock::time_point found_at, std::uint64_t steps_at_found);
  bool target_reached() const { return has_best && best.objective <= target.value_or(0); }
};

/// Fills a population with cbns-improved random k-subsets. Returns early
/// (possibly below capacity) once `progress` reaches its target. When C(n, k)
/// is below 2 * pop_size the capacity shrinks to max(2, C(n, k) / 2).
Population init_population(const Graph& graph, const Objective& objective, std::size_t k,
                           const MemeticParams& params, Rng& rng, const Deadline& deadline,
                           SearchProgress& progress);

struct MemeticResult {
  Individual best;
  std::uint64_t initial_objective = 0;
  double time_to_best = 0.0;
  std::uint64_t steps_to_best = 0;
  std::uint64_t total_steps = 0;
  std::int64_t generations = 0;
  double elapsed = 0.0;
};

/// Memetic search for a k-node deleted set minimizing `objective`.
MemeticResult macnp(const Graph& graph, const Objective& objective, std::size_t k, const MemeticParams& params,
                    Rng& rng, const Deadline& deadline);

}  // namespace cnp
