#include "cnp/cbns.hpp"

#include <algorithm>
#include <stdexcept>

namespace cnp {

std::int64_t large_threshold(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) throw std::logic_error("large_threshold: no residual components");
  auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  return (*lo + *hi) / 2;
}

std::int64_t large_threshold(const SolutionState& state) {
  if (state.component_count() == 0) throw std::logic_error("large_threshold: no residual components");
  std::int64_t lo = INT64_MAX, hi = 0;
  for (int slot : state.components()) {
    lo = std::min(lo, state.component_size(slot));
    hi = std::max(hi, state.component_size(slot));
  }
  return (lo + hi) / 2;
}

namespace {

void fill_eligible(const SolutionState& state, std::vector<int>& out) {
  out.clear();
  if (state.component_count() == 0) return;
  std::int64_t lo = INT64_MAX, hi = 0;
  for (int slot : state.components()) {
    lo = std::min(lo, state.component_size(slot));
    hi = std::max(hi, state.component_size(slot));
  }
  // lo == hi is the only case with no strictly larger component.
  const std::int64_t threshold = lo == hi ? hi - 1 : (lo + hi) / 2;
  for (int slot : state.components())
    if (state.component_size(slot) > threshold) out.push_back(slot);
}

}  // namespace

std::vector<int> eligible_components(const SolutionState& state) {
  std::vector<int> out;
  fill_eligible(state, out);
  return out;
}

NodeId select_removal_node(const SolutionState& state, int slot, NodeWeights& weights) {
  const Graph& g = state.graph();
  auto members = state.members(slot);
  NodeId best = members.front();
  for (NodeId v : members.subspan(1)) {
    if (weights[v] != weights[best]) {
      if (weights[v] > weights[best]) best = v;
    } else if (g.degree(v) != g.degree(best)) {
      if (g.degree(v) > g.degree(best)) best = v;
    } else if (v < best) {
      best = v;
    }
  }
  for (NodeId v : members)
    if (v != best) weights.increment(v);
  return best;
}

NodeId select_removal_node(const SolutionState& state, NodeWeights& weights, Rng& rng) {
  auto eligible = eligible_components(state);
  if (eligible.empty()) throw std::logic_error("select_removal_node: residual graph is empty");
  return select_removal_node(state, eligible[uniform_index(rng, eligible.size())], weights);
}

NodeId best_reinsertion(const SolutionState& state) {
  auto removed = state.removed();
  if (removed.empty()) throw std::logic_error("best_reinsertion: S is empty");
  NodeId best = removed.front();
  std::int64_t best_delta = state.delta_reinsert(best);
  for (NodeId w : removed.subspan(1)) {
    const std::int64_t d = state.delta_reinsert(w);
    if (d < best_delta || (d == best_delta && w < best)) {
      best = w;
      best_delta = d;
    }
  }
  return best;
}

CbnsStats cbns(SolutionState& state, NodeWeights& weights, const CbnsParams& params, Rng& rng,
               const Deadline& deadline) {
  if (params.max_iter < 1) throw std::invalid_argument("cbns: max_iter must be >= 1");
  if (weights.size() != static_cast<std::size_t>(state.graph().num_nodes()))
    weights.resize(state.graph().num_nodes());
  else
    weights.reset();

  CbnsStats stats;
  if (state.removed_count() == 0 || state.component_count() == 0) return stats;

  const std::uint64_t floor = params.target.value_or(0);
  std::vector<NodeId> best(state.removed().begin(), state.removed().end());
  std::uint64_t best_value = state.objective();
  std::vector<int> eligible;

  for (std::int64_t idle = 0; idle < params.max_iter && best_value > floor;) {
    if (deadline.expired()) break;
    fill_eligible(state, eligible);
    const int slot = eligible[uniform_index(rng, eligible.size())];
    NodeId entering;
    if (params.node_weighting) {
      entering = select_removal_node(state, slot, weights);
    } else {
      auto members = state.members(slot);
      entering = members[uniform_index(rng, members.size())];
    }
    state.move_to_s(entering);
    const NodeId leaving = best_reinsertion(state);
    state.move_from_s(leaving);
    weights.clear(leaving);
    ++stats.steps;

    if (state.objective() < best_value) {
      best_value = state.objective();
      best.assign(state.removed().begin(), state.removed().end());
      stats.steps_to_best = stats.steps;
      stats.best_time = Clock::now();
      idle = 0;
    } else {
      ++idle;
    }
  }
  state.assign(best);
  return stats;
}

}  // namespace cnp
