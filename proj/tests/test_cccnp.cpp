#include <doctest.h>

#include "cnp/cccnp.hpp"
#include "support.hpp"

using namespace cnp;
namespace t = cnp::testing;

namespace {

// Smallest k with a feasible k-subset, by enumeration.
int reference_min_k(const Graph& g, std::int64_t cap) {
  for (int k = 0; k <= g.num_nodes(); ++k) {
    auto excess = [cap](const Graph& h, const std::vector<NodeId>& s) { return t::reference_excess(h, s, cap); };
    if (t::reference_optimum(g, k, excess) == 0) return k;
  }
  return g.num_nodes();
}

}  // namespace

TEST_SUITE("cccnp") {
  TEST_CASE("nothing to do when every component fits") {
    Graph g = t::make_graph(6, {{0, 1}, {2, 3}, {4, 5}});
    CHECK(construct_initial(g, 2).empty());
  }

  TEST_CASE("star loses its hub") {
    Graph g = t::star_graph(9);
    CHECK(construct_initial(g, 3) == std::vector<NodeId>{0});
  }

  TEST_CASE("path P5 greedy start is feasible") {
    Graph g = t::path_graph(5);
    auto s = construct_initial(g, 2);
    // Nodes 1, 2, 3 tie on degree; node 1 goes first and leaves {2,3,4}.
    CHECK(s == std::vector<NodeId>{1, 3});
    CHECK(t::reference_excess(g, s, 2) == 0);
  }

  TEST_CASE("greedy start is always feasible") {
    std::mt19937_64 gen(31);
    for (int rep = 0; rep < 50; ++rep) {
      Graph g = t::erdos_renyi(30, 0.1, gen);
      const std::int64_t cap = 1 + rep % 5;
      auto s = construct_initial(g, cap);
      CHECK(t::reference_excess(g, s, cap) == 0);
      CHECK(std::is_sorted(s.begin(), s.end()));
    }
  }

  TEST_CASE("P5 with cap 2 needs one deletion") {
    Graph g = t::path_graph(5);
    CHECK(reference_min_k(g, 2) == 1);
    MemeticParams p;
    p.generations = 50;
    Rng rng(1);
    CapResult r = maccc(g, 2, p, rng, Deadline::never());
    CHECK(r.k_best == 1);
    CHECK(r.nodes == std::vector<NodeId>{2});
    CHECK(r.k_initial == 2);
    REQUIRE(r.trajectory.size() == 3);
    CHECK(r.trajectory[1].feasible);
    CHECK_FALSE(r.trajectory[2].feasible);
    CHECK(r.trajectory[2].k == 0);
  }

  TEST_CASE("matches the exhaustive minimum on small graphs") {
    std::mt19937_64 gen(41);
    for (int rep = 0; rep < 12; ++rep) {
      Graph g = t::erdos_renyi(12, 0.25, gen);
      const std::int64_t cap = 2 + rep % 3;
      MemeticParams p;
      p.generations = 40;
      Rng rng(rep);
      CapResult r = maccc(g, cap, p, rng, Deadline::never());
      CHECK(r.k_best == static_cast<std::size_t>(reference_min_k(g, cap)));
      CHECK(r.nodes.size() == r.k_best);
      CHECK(t::reference_excess(g, r.nodes, cap) == 0);
      CHECK(r.k_best <= r.k_initial);
    }
  }

  TEST_CASE("feasible without deletions") {
    Graph g = t::make_graph(4, {{0, 1}, {2, 3}});
    Rng rng(1);
    CapResult r = maccc(g, 3, {}, rng, Deadline::never());
    CHECK(r.k_best == 0);
    CHECK(r.nodes.empty());
  }

  TEST_CASE("every recorded level is consistent") {
    std::mt19937_64 gen(8);
    Graph g = t::barabasi_albert(150, 2, gen);
    MemeticParams p;
    p.generations = 10;
    p.max_iter = 300;
    Rng rng(5);
    CapResult r = maccc(g, 5, p, rng, Deadline::after(20));
    CHECK(t::reference_excess(g, r.nodes, 5) == 0);
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) CHECK(r.trajectory[i].k + 1 == r.trajectory[i - 1].k);
    CHECK(r.trajectory.front().k == r.k_initial);
  }
}
