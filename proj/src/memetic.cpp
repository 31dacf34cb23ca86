#include "cnp/memetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cnp {

void MemeticParams::validate() const {
  if (pop_size < 2) throw std::invalid_argument("population size must be >= 2");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("p0 must lie in (0, 1)");
  if (!(pool_beta >= 0.0 && pool_beta <= 1.0)) throw std::invalid_argument("pool_beta must lie in [0, 1]");
  if (generations && *generations < 0) throw std::invalid_argument("generations must be >= 0");
}

Individual snapshot(const SolutionState& state) { return {state.sorted_removed(), state.objective()}; }

BackbonePartition partition_backbones(std::span<const NodeId> first, std::span<const NodeId> second, NodeId n) {
  std::vector<std::uint8_t> count(static_cast<std::size_t>(n), 0);
  for (NodeId v : first) count[v] |= 1;
  for (NodeId v : second) count[v] |= 2;
  BackbonePartition out;
  for (NodeId v = 0; v < n; ++v) {
    if (count[v] == 3)
      out.common.push_back(v);
    else if (count[v] != 0)
      out.exclusive.push_back(v);
    else
      out.excluded.push_back(v);
  }
  return out;
}

std::int64_t solution_distance(std::span<const NodeId> first, std::span<const NodeId> second) {
  std::int64_t shared = 0;
  auto a = first.begin(), b = second.begin();
  while (a != first.end() && b != second.end()) {
    if (*a < *b)
      ++a;
    else if (*b < *a)
      ++b;
    else {
      ++shared;
      ++a;
      ++b;
    }
  }
  return static_cast<std::int64_t>(first.size()) - shared;
}

CrossoverResult double_backbone_crossover(const Graph& graph, const Objective& objective,
                                          std::span<const NodeId> first, std::span<const NodeId> second,
                                          std::size_t k, double p0, Rng& rng, bool double_backbone) {
  BackbonePartition parts = partition_backbones(first, second, graph.num_nodes());
  std::vector<NodeId> inherited = parts.common;
  if (double_backbone) {
    std::bernoulli_distribution coin(p0);
    for (NodeId v : parts.exclusive)
      if (coin(rng)) inherited.push_back(v);
    std::sort(inherited.begin(), inherited.end());
  }

  SolutionState state(graph, objective, inherited);
  while (state.removed_count() < k) {
    auto eligible = eligible_components(state);
    if (eligible.empty()) break;
    auto members = state.members(eligible[uniform_index(rng, eligible.size())]);
    state.move_to_s(members[uniform_index(rng, members.size())]);
  }
  // Only second-backbone nodes leave, so the common part survives.
  while (state.removed_count() > k) {
    NodeId leaving = -1;
    std::int64_t leaving_delta = 0;
    for (NodeId w : state.removed()) {
      if (std::binary_search(parts.common.begin(), parts.common.end(), w)) continue;
      const std::int64_t d = state.delta_reinsert(w);
      if (leaving < 0 || d < leaving_delta || (d == leaving_delta && w < leaving)) {
        leaving = w;
        leaving_delta = d;
      }
    }
    state.move_from_s(leaving);
  }
  return {std::move(state), std::move(inherited)};
}

Population::Population(std::size_t capacity, double pool_beta) : capacity_(capacity), pool_beta_(pool_beta) {
  if (capacity < 1) throw std::invalid_argument("population capacity must be positive");
}

bool Population::contains(std::span<const NodeId> nodes) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const Individual& m) { return std::equal(m.nodes.begin(), m.nodes.end(), nodes.begin(), nodes.end()); });
}

void Population::add(Individual individual) {
  if (members_.size() >= capacity_) throw std::logic_error("population is full");
  if (contains(individual.nodes)) throw std::logic_error("population members must be distinct");
  members_.push_back(std::move(individual));
}

std::vector<double> Population::scores(const Individual& offspring) const {
  std::vector<const Individual*> pool;
  pool.reserve(members_.size() + 1);
  pool.push_back(&offspring);
  for (const auto& m : members_) pool.push_back(&m);
  const std::size_t size = pool.size();

  // Summed distances share the denominator, so they rank like averages.
  std::vector<std::int64_t> spread(size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) {
      const auto d = solution_distance(pool[i]->nodes, pool[j]->nodes);
      spread[i] += d;
      spread[j] += d;
    }

  std::vector<double> out(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t quality_rank = 1, distance_rank = 1;
    for (std::size_t j = 0; j < size; ++j) {
      if (pool[j]->objective < pool[i]->objective) ++quality_rank;
      if (spread[j] > spread[i]) ++distance_rank;
    }
    out[i] = pool_beta_ * static_cast<double>(quality_rank) + (1.0 - pool_beta_) * static_cast<double>(distance_rank);
  }
  return out;
}

std::size_t Population::worst_index(const Individual& offspring) const {
  const auto score = scores(offspring);
  auto objective_at = [&](std::size_t i) { return i == 0 ? offspring.objective : members_[i - 1].objective; };
  constexpr double kTie = 1e-9;
  std::size_t worst = 0;
  for (std::size_t i = 1; i < score.size(); ++i) {
    if (score[i] > score[worst] + kTie) {
      worst = i;
    } else if (std::abs(score[i] - score[worst]) <= kTie && objective_at(i) >= objective_at(worst)) {
      worst = i;
    }
  }
  return worst;
}

Population::Outcome Population::update(Individual offspring) {
  if (contains(offspring.nodes)) return Outcome::kDuplicate;
  const std::size_t worst = worst_index(offspring);
  if (worst == 0) return Outcome::kDiscarded;
  members_[worst - 1] = std::move(offspring);
  return Outcome::kReplaced;
}

bool SearchProgress::offer(const SolutionState& state, Clock::time_point found_at, std::uint64_t steps_at_found) {
  if (has_best && state.objective() >= best.objective) return false;
  best = snapshot(state);
  has_best = true;
  time_to_best = std::max(0.0, std::chrono::duration<double>(found_at - start).count());
  steps_to_best = steps_at_found;
  return true;
}

namespace {

// One random exchange inside the large components: a random node of a random
// eligible component enters S and a different random node of S leaves.
void perturb(SolutionState& state, Rng& rng) {
  auto eligible = eligible_components(state);
  if (eligible.empty()) return;
  auto members = state.members(eligible[uniform_index(rng, eligible.size())]);
  const NodeId entering = members[uniform_index(rng, members.size())];
  state.move_to_s(entering);
  auto removed = state.removed();
  NodeId leaving = entering;
  while (leaving == entering) leaving = removed[uniform_index(rng, removed.size())];
  state.move_from_s(leaving);
}

// C(n, k), stopping early once it reaches `cap`.
std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k && c < cap; ++i) c = c * (n - k + i) / i;
  return std::min(c, cap);
}

std::uint64_t run_cbns(SolutionState& state, NodeWeights& weights, const MemeticParams& params, Rng& rng,
                       const Deadline& deadline, SearchProgress& progress) {
  CbnsParams cp;
  cp.max_iter = params.max_iter;
  cp.node_weighting = params.node_weighting;
  cp.target = params.target;
  const std::uint64_t base = progress.steps;
  CbnsStats stats = cbns(state, weights, cp, rng, deadline);
  progress.steps += stats.steps;
  progress.offer(state, stats.best_time, base + stats.steps_to_best);
  return stats.steps;
}

}  // namespace

Population init_population(const Graph& graph, const Objective& objective, std::size_t k,
                           const MemeticParams& params, Rng& rng, const Deadline& deadline,
                           SearchProgress& progress) {
  params.validate();
  const auto n = static_cast<std::size_t>(graph.num_nodes());
  if (k == 0 || k >= n) throw std::invalid_argument("k must satisfy 0 < k < n");

  // Tiny search spaces cannot host p distinct local optima.
  const auto wanted = static_cast<std::uint64_t>(params.pop_size);
  const std::uint64_t space = subsets_up_to(n, k, 2 * wanted);
  const auto capacity = static_cast<std::size_t>(space < 2 * wanted ? std::max<std::uint64_t>(2, space / 2) : wanted);
  Population pop(capacity, params.pool_beta);
  NodeWeights weights(graph.num_nodes());
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), 0);

  while (pop.size() < pop.capacity() && !progress.target_reached()) {
    if (pop.size() > 0 && deadline.expired()) break;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
    SolutionState state(graph, objective, std::span<const NodeId>(pool.data(), k));
    if (!progress.initial_objective) progress.initial_objective = state.objective();
    run_cbns(state, weights, params, rng, deadline, progress);

    Individual candidate = snapshot(state);
    const std::size_t limit = n * k;
    for (std::size_t attempt = 0; pop.contains(candidate.nodes); ++attempt) {
      if (attempt >= limit)
        throw InitializationError("could not build " + std::to_string(pop.capacity()) + " distinct solutions with k=" +
                                  std::to_string(k));
      perturb(state, rng);
      candidate = snapshot(state);
    }
    progress.offer(state, Clock::now(), progress.steps);
    pop.add(std::move(candidate));
  }
  return pop;
}

MemeticResult macnp(const Graph& graph, const Objective& objective, std::size_t k, const MemeticParams& params,
                    Rng& rng, const Deadline& deadline) {
  SearchProgress progress;
  progress.target = params.target;
  Population pop = init_population(graph, objective, k, params, rng, deadline, progress);
  NodeWeights weights(graph.num_nodes());

  while (!progress.target_reached() && pop.size() >= 2) {
    if (params.generations && progress.generations >= *params.generations) break;
    if (deadline.expired()) break;
    const std::size_t i = uniform_index(rng, pop.size());
    std::size_t j = uniform_index(rng, pop.size());
    while (j == i) j = uniform_index(rng, pop.size());
    CrossoverResult child = double_backbone_crossover(graph, objective, pop[i].nodes, pop[j].nodes, k, params.p0, rng,
                                                      params.double_backbone);
    run_cbns(child.offspring, weights, params, rng, deadline, progress);
    pop.update(snapshot(child.offspring));
    ++progress.generations;
  }

  MemeticResult result;
  result.best = progress.best;
  result.initial_objective = progress.initial_objective.value_or(progress.best.objective);
  result.time_to_best = progress.time_to_best;
  result.steps_to_best = progress.steps_to_best;
  result.total_steps = progress.steps;
  result.generations = progress.generations;
  result.elapsed = std::chrono::duration<double>(Clock::now() - progress.start).count();
  return result;
}

}  // namespace cnp
