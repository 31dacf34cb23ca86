#include "cnp/cccnp.hpp"

#include <algorithm>

namespace cnp {

std::vector<NodeId> construct_initial(const Graph& graph, std::int64_t cap) {
  SolutionState state(graph, Objective::excess(cap));
  while (state.objective() > 0) {
    // Largest oversized component; equal sizes resolved by smallest member.
    int chosen = -1;
    NodeId chosen_min = 0;
    for (int slot : state.components()) {
      if (state.component_size(slot) <= cap) continue;
      if (chosen >= 0 && state.component_size(slot) < state.component_size(chosen)) continue;
      auto members = state.members(slot);
      const NodeId lowest = *std::min_element(members.begin(), members.end());
      if (chosen < 0 || state.component_size(slot) > state.component_size(chosen) || lowest < chosen_min) {
        chosen = slot;
        chosen_min = lowest;
      }
    }

    NodeId hub = -1;
    std::int64_t hub_degree = -1;
    for (NodeId v : state.members(chosen)) {
      std::int64_t d = 0;
      for (NodeId w : graph.neighbors(v)) d += state.in_s(w) ? 0 : 1;
      if (d > hub_degree || (d == hub_degree && v < hub)) {
        hub = v;
        hub_degree = d;
      }
    }
    state.move_to_s(hub);
  }
  return state.sorted_removed();
}

CapResult maccc(const Graph& graph, std::int64_t cap, const MemeticParams& params, Rng& rng,
                const Deadline& deadline) {
  params.validate();
  const Objective objective = Objective::excess(cap);
  const auto start = Clock::now();
  auto since_start = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  CapResult result;
  result.nodes = construct_initial(graph, cap);
  result.k_initial = result.k_best = result.nodes.size();
  result.time_to_best = since_start();
  result.trajectory.push_back({result.k_best, 0, result.time_to_best, true});

  MemeticParams level = params;
  level.target = 0;
  for (std::size_t k = result.k_best; k > 0 && !deadline.expired();) {
    --k;
    const double level_start = since_start();
    CapLevel record{k, 0, 0.0, false};
    if (k == 0) {
      record.excess = evaluate_set(graph, {}, objective);
      record.feasible = record.excess == 0;
      record.seconds = since_start() - level_start;
      result.trajectory.push_back(record);
      if (record.feasible) {
        result.k_best = 0;
        result.nodes.clear();
        result.time_to_best = since_start();
      }
      break;
    }

    MemeticResult found;
    try {
      found = macnp(graph, objective, k, level, rng, deadline);
    } catch (const InitializationError&) {
      record.excess = UINT64_MAX;
      record.seconds = since_start() - level_start;
      result.trajectory.push_back(record);
      break;
    }
    result.total_steps += found.total_steps;
    result.generations += found.generations;
    record.excess = found.best.objective;
    record.feasible = found.best.objective == 0;
    record.seconds = since_start() - level_start;
    result.trajectory.push_back(record);
    if (!record.feasible) break;

    result.k_best = k;
    result.nodes = found.best.nodes;
    result.time_to_best = level_start + found.time_to_best;
    result.steps_to_best = result.total_steps - found.total_steps + found.steps_to_best;
  }
  return result;
}

}  // namespace cnp
