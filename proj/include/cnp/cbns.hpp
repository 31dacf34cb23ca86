#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cnp/deadline.hpp"
#include "cnp/random.hpp"
#include "cnp/solution.hpp"

namespace cnp {

/// Removal-priority counters for the component-based neighborhood search.
class NodeWeights {
 public:
  explicit NodeWeights(NodeId n = 0) : weight_(static_cast<std::size_t>(n), 0) {}

  void reset() { std::fill(weight_.begin(), weight_.end(), 0); }
  void resize(NodeId n) { weight_.assign(static_cast<std::size_t>(n), 0); }
  std::int64_t operator[](NodeId v) const { return weight_[v]; }
  void increment(NodeId v) { ++weight_[v]; }
  void clear(NodeId v) { weight_[v] = 0; }
  void set(NodeId v, std::int64_t w) { weight_[v] = w; }
  std::size_t size() const { return weight_.size(); }

 private:
  std::vector<std::int64_t> weight_;
};

/// floor((largest + smallest component size) / 2). Throws std::logic_error
/// when there are no components.
std::int64_t large_threshold(std::span<const std::int64_t> sizes);
std::int64_t large_threshold(const SolutionState& state);

/// Slots of components larger than the threshold. When all components have
/// the same size none is strictly larger, and every component of maximum
/// size is returned instead. Empty only when the residual graph is empty.
std::vector<int> eligible_components(const SolutionState& state);

/// Picks the heaviest node of `slot` (ties: larger degree, then smaller id)
/// and increments the weights of the other nodes of that component.
NodeId select_removal_node(const SolutionState& state, int slot, NodeWeights& weights);
/// Same, with the component drawn uniformly from `eligible_components`.
NodeId select_removal_node(const SolutionState& state, NodeWeights& weights, Rng& rng);

/// Node of S whose reinsertion increases the objective least (ties: smaller id).
NodeId best_reinsertion(const SolutionState& state);

struct CbnsParams {
  std::int64_t max_iter = 1000;
  // Off: the entering node is drawn uniformly from the chosen component.
  bool node_weighting = true;
  // Stop as soon as the objective is at or below this value.
  std::optional<std::uint64_t> target;
};

struct CbnsStats {
  std::uint64_t steps = 0;
  std::uint64_t steps_to_best = 0;
  Clock::time_point best_time = Clock::now();
};

/// Component-based neighborhood search. Runs two-phase exchanges until
/// `max_iter` consecutive exchanges fail to improve the best objective, the
/// target is met, or the deadline passes; `state` is left at the best
/// solution seen. Weights are reset on entry.
CbnsStats cbns(SolutionState& state, NodeWeights& weights, const CbnsParams& params, Rng& rng,
               const Deadline& deadline);

}  // namespace cnp
