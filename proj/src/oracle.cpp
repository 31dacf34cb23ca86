#include <numeric>

#include "cnp/harness.hpp"

namespace cnp {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(value);
}

OracleResult brute_force_optimum(const Graph& graph, std::size_t k, const Objective& objective, std::uint64_t limit) {
  const auto n = static_cast<std::size_t>(graph.num_nodes());
  if (k > n) throw std::invalid_argument("k exceeds the number of nodes");
  const std::uint64_t subsets = binomial(n, k);
  if (subsets > limit)
    throw SizeGuardError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " + std::to_string(subsets) +
                         " subsets exceeds the oracle limit of " + std::to_string(limit));

  std::vector<NodeId> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::uint8_t> mask(n, 0);
  OracleResult best;
  bool first = true;
  while (true) {
    std::fill(mask.begin(), mask.end(), 0);
    for (NodeId v : pick) mask[v] = 1;
    const std::uint64_t value = objective.evaluate(components_of(graph, mask).sizes);
    if (first || value < best.objective) {
      best.objective = value;
      best.nodes = pick;
      first = false;
    }
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && static_cast<std::size_t>(pick[i - 1]) == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace cnp
