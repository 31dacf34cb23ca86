#include <doctest.h>

#include <sstream>

#include "cnp/solution.hpp"
#include "support.hpp"

using namespace cnp;
namespace t = cnp::testing;

namespace {

ComponentLabeling with_sizes(std::vector<std::int64_t> sizes) {
  ComponentLabeling l;
  l.sizes = std::move(sizes);
  l.count = static_cast<int>(l.sizes.size());
  return l;
}

void check_against_reference(const SolutionState& s) {
  const Graph& g = s.graph();
  std::vector<NodeId> removed(s.removed().begin(), s.removed().end());
  const Objective& obj = s.objective_function();
  const std::uint64_t expected = obj.kind() == Objective::Kind::kPairwise ? t::reference_pairwise(g, removed)
                                                                          : t::reference_excess(g, removed, obj.cap());
  REQUIRE(s.objective() == expected);
  std::vector<std::int64_t> sizes;
  for (int slot : s.components()) sizes.push_back(s.component_size(slot));
  std::sort(sizes.begin(), sizes.end());
  REQUIRE(sizes == t::reference_sizes(g, removed));
  for (int slot : s.components())
    for (NodeId v : s.members(slot)) REQUIRE(s.component_of(v) == slot);
}

}  // namespace

TEST_SUITE("solution") {
  TEST_CASE("pairwise connectivity") {
    CHECK(evaluate_pairwise(with_sizes({1, 2, 3})) == 4);
    CHECK(evaluate_pairwise(with_sizes({1, 1, 1, 1})) == 0);
    CHECK(evaluate_pairwise(with_sizes({500})) == 124750);
    CHECK(evaluate_pairwise(with_sizes({})) == 0);
  }

  TEST_CASE("excess over the cap") {
    CHECK(evaluate_excess(with_sizes({5, 3, 1}), 3) == 2);
    CHECK(evaluate_excess(with_sizes({2, 2}), 4) == 0);
    CHECK(evaluate_excess(with_sizes({10}), 1) == 9);
    CHECK_THROWS_AS(evaluate_excess(with_sizes({3}), 0), std::invalid_argument);
    CHECK_THROWS_AS(Objective::excess(0), std::invalid_argument);
  }

  TEST_CASE("reinsertion delta on a path") {
    Graph g = t::path_graph(3);
    std::vector<NodeId> s{1};
    SolutionState state(g, Objective::pairwise(), s);
    CHECK(state.objective() == 0);
    CHECK(state.delta_reinsert(1) == 3);
    CHECK_THROWS_AS(state.delta_reinsert(0), std::logic_error);
  }

  TEST_CASE("isolated reinsertion costs nothing") {
    Graph g = t::make_graph(3, {{0, 1}});
    std::vector<NodeId> s{2};
    SolutionState state(g, Objective::pairwise(), s);
    CHECK(state.delta_reinsert(2) == 0);
  }

  TEST_CASE("cutting a path and merging it back") {
    Graph g = t::path_graph(3);
    SolutionState state(g, Objective::pairwise());
    CHECK(state.objective() == 3);
    state.move_to_s(1);
    CHECK(state.objective() == 0);
    CHECK(state.component_count() == 2);
    state.move_from_s(1);
    CHECK(state.objective() == 3);
    CHECK(state.component_count() == 1);
  }

  TEST_CASE("star center removal") {
    Graph g = t::star_graph(4);
    SolutionState state(g, Objective::pairwise());
    CHECK(state.objective() == 10);
    state.move_to_s(0);
    CHECK(state.objective() == 0);
    CHECK(state.component_count() == 4);
  }

  TEST_CASE("excess delta uses the capped cost") {
    Graph g = t::path_graph(7);
    std::vector<NodeId> s{3};
    SolutionState state(g, Objective::excess(2), s);
    CHECK(state.objective() == 2);
    CHECK(state.delta_reinsert(3) == 5 - 2);
  }

  TEST_CASE("random moves match a fresh recomputation") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 60; ++rep) {
      const NodeId n = 2 + static_cast<NodeId>(rng() % 11);
      Graph g = t::erdos_renyi(n, 0.15 + 0.1 * (rep % 4), rng);
      const Objective obj = rep % 3 == 0 ? Objective::excess(1 + static_cast<std::int64_t>(rng() % 3)) : Objective::pairwise();
      SolutionState state(g, obj);
      check_against_reference(state);
      for (int step = 0; step < 100; ++step) {
        const NodeId v = static_cast<NodeId>(rng() % n);
        if (state.in_s(v)) {
          const std::int64_t delta = state.delta_reinsert(v);
          const std::uint64_t before = state.objective();
          state.move_from_s(v);
          REQUIRE(static_cast<std::int64_t>(state.objective() - before) == delta);
        } else {
          state.move_to_s(v);
        }
        check_against_reference(state);
      }
    }
  }

  TEST_CASE("assign reaches the requested set") {
    std::mt19937_64 rng(5);
    Graph g = t::erdos_renyi(30, 0.1, rng);
    std::vector<NodeId> a{1, 4, 9, 20}, b{4, 5, 29};
    SolutionState state(g, Objective::pairwise(), a);
    state.assign(b);
    CHECK(state.sorted_removed() == b);
    check_against_reference(state);
    SolutionState fresh(g, Objective::pairwise(), b);
    CHECK(fresh.objective() == state.objective());
    CHECK(fresh.labeling().label == state.labeling().label);
  }

  TEST_CASE("construction rejects bad sets") {
    Graph g = t::path_graph(4);
    std::vector<NodeId> twice{1, 1}, outside{7};
    CHECK_THROWS(SolutionState(g, Objective::pairwise(), twice));
    CHECK_THROWS(SolutionState(g, Objective::pairwise(), outside));
  }

  TEST_CASE("solution file round-trip") {
    SolutionRecord r{{3, 1, 8}, 42};
    std::ostringstream out;
    write_solution(out, r);
    std::istringstream in(out.str());
    SolutionRecord back = read_solution(in);
    CHECK(back.nodes == r.nodes);
    CHECK(back.objective == 42);
  }

  TEST_CASE("malformed solution files") {
    auto read = [](const std::string& text) {
      std::istringstream in(text);
      return read_solution(in);
    };
    CHECK_THROWS_AS(read(""), ParseError);
    CHECK_THROWS_AS(read("2 5\n1\n"), ParseError);
    CHECK_THROWS_AS(read("1 5\n1\n2\n"), ParseError);
    CHECK_THROWS_AS(read("1 5\nx\n"), ParseError);
    CHECK_THROWS_AS(read("1 5\n-3\n"), RangeError);
  }
}
