#pragma once

#include <cstdint>
#include <vector>

#include "cnp/deadline.hpp"
#include "cnp/memetic.hpp"
#include "cnp/random.hpp"

namespace cnp {

/// Greedy feasible start for the component-size-capped variant: while a
/// component has more than `cap` nodes, delete the node with the most
/// residual neighbors (ties: smaller id) from the largest such component.
std::vector<NodeId> construct_initial(const Graph& graph, std::int64_t cap);

struct CapLevel {
  std::size_t k = 0;
  std::uint64_t excess = 0;
  double seconds = 0.0;  // time spent at this level
  bool feasible = false;
};

struct CapResult {
  std::size_t k_best = 0;
  std::vector<NodeId> nodes;  // sorted, |nodes| == k_best, no component above cap
  std::size_t k_initial = 0;
  std::vector<CapLevel> trajectory;
  double time_to_best = 0.0;
  std::uint64_t total_steps = 0;
  std::uint64_t steps_to_best = 0;
  std::int64_t generations = 0;
};

/// Minimizes the number of deleted nodes such that every residual component
/// has at most `cap` nodes. Starting from `construct_initial`, k is lowered by
/// one while the memetic search (minimizing the excess objective, target 0)
/// still finds a feasible set. Each level may use all remaining time;
/// `params.generations`, when set, caps each level instead.
CapResult maccc(const Graph& graph, std::int64_t cap, const MemeticParams& params, Rng& rng,
                const Deadline& deadline);

}  // namespace cnp
