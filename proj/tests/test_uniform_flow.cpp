#include <doctest.h>

#include "blocksched/errors.hpp"
#include "blocksched/maxflow.hpp"
#include "blocksched/oracle.hpp"
#include "blocksched/uniform_flow.hpp"
#include "support.hpp"

using namespace bsched;
using namespace testing_support;

namespace {

Instance uniform_unit(int n, const std::vector<std::vector<int>>& blocks, std::vector<std::int64_t> speeds) {
  Instance inst;
  inst.graph = BlockCutTree::from_blocks(n, blocks);
  inst.env = MachineEnv::uniform(std::move(speeds));
  inst.proc.assign(n, 1);
  return inst;
}

// Minimum s-t cut by enumerating all vertex bipartitions.
std::int64_t brute_min_cut(int nodes, const std::vector<std::tuple<int, int, std::int64_t>>& edges, int s, int t) {
  std::int64_t best = -1;
  for (int mask = 0; mask < (1 << nodes); ++mask) {
    if (!(mask >> s & 1) || (mask >> t & 1)) continue;
    std::int64_t cut = 0;
    for (auto [u, v, c] : edges)
      if ((mask >> u & 1) && !(mask >> v & 1)) cut += c;
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

}  // namespace

TEST_CASE("max flow basics") {
  MaxFlow path(4);
  path.add_edge(0, 1, 1);
  path.add_edge(1, 2, 1);
  path.add_edge(2, 3, 1);
  CHECK(path.run(0, 3) == 1);
  MaxFlow two(4);
  two.add_edge(0, 1, 1);
  two.add_edge(1, 3, 1);
  two.add_edge(0, 2, 1);
  const int e = two.add_edge(2, 3, 1);
  CHECK(two.run(0, 3) == 2);
  CHECK(two.flow(e) == 1);
}

TEST_CASE("max flow equals brute-force minimum cut") {
  Rng rng(50);
  for (int it = 0; it < 50; ++it) {
    const int nodes = std::uniform_int_distribution<int>(3, 12)(rng);
    std::vector<std::tuple<int, int, std::int64_t>> edges;
    MaxFlow f(nodes);
    // DAG on the node order with unit capacities.
    for (int u = 0; u < nodes; ++u)
      for (int v = u + 1; v < nodes; ++v)
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
          edges.emplace_back(u, v, 1);
          f.add_edge(u, v, 1);
        }
    CHECK(f.run(0, nodes - 1) == brute_min_cut(nodes, edges, 0, nodes - 1));
  }
}

TEST_CASE("candidate makespans") {
  auto inst = uniform_unit(2, {{0, 1}}, {2, 1});
  CHECK(candidate_makespans(inst) == std::vector<ExactTime>{ExactTime(1, 2), ExactTime(1), ExactTime(2)});
  inst = uniform_unit(3, {}, {1, 1});
  CHECK(candidate_makespans(inst) == std::vector<ExactTime>{ExactTime(1), ExactTime(2), ExactTime(3)});
}

TEST_CASE("small optima") {
  const auto star = uniform_unit(4, {{0, 1}, {0, 2}, {0, 3}}, {2, 1});
  CHECK(makespan(star, solve_uniform_unit(star)) == ExactTime(3, 2));
  const auto clique = uniform_unit(3, {{0, 1, 2}}, {5, 2, 1});
  CHECK(makespan(clique, solve_uniform_unit(clique)) == ExactTime(1));
  const auto big = uniform_unit(3, {{0, 1, 2}}, {2, 1});
  CHECK_THROWS_AS(solve_uniform_unit(big), Infeasible);
}

TEST_CASE("networks without simplicial jobs") {
  // Path 0-1-2-3 with every vertex but the ends a cut vertex; drop the ends
  // by using a triangle of cut vertices instead.
  const auto inst = uniform_unit(3, {{0, 1}, {1, 2}}, {1, 1});
  CutAssignment f(3, -1);
  f[1] = 0;
  auto net = build_flow_network(inst, ExactTime(2), f);
  CHECK(net.simplicial.size() == 2);
  CutAssignment bad(3, -1);
  bad[1] = 0;
  CHECK_THROWS_AS(build_flow_network(inst, ExactTime(1, 2), bad), InvalidAssignment);
}

TEST_CASE("optimal on the oracle range and monotone in C") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 2 + seed % 7;
    const int m = 2 + seed % 2;
    const auto inst = random_uniform(n, m, BFunction::Avg, ProcDist::Unit, {1, 2, 5}, seed);
    const auto s = solve_uniform_unit(inst);
    const auto opt = brute_force(inst).optimum;
    CHECK(is_feasible(inst, s));
    CHECK(makespan(inst, s) == opt);
    const auto cands = candidate_makespans(inst);
    CHECK(std::find(cands.begin(), cands.end(), opt) != cands.end());
    // machine counts stay within floor(C * s_j)
    std::vector<int> count(m, 0);
    for (int a : s.assign) ++count[a];
    for (int i = 0; i < m; ++i) CHECK(count[i] <= unit_capacity(inst, opt, i));
    // parallel mode gives the same answer
    CHECK(solve_uniform_unit(inst, Budget(), 3) == s);
  }
}
