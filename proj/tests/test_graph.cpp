#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "blocksched/errors.hpp"
#include "blocksched/graph.hpp"
#include "support.hpp"

using namespace bsched;

namespace {

// Checks the three decomposition properties plus the binary shape.
bool valid_decomposition(const BlockCutTree& g, const TreeDecomposition& td) {
  const int nodes = static_cast<int>(td.bags.size());
  if (td.root < 0 || td.root >= nodes) return false;
  std::vector<int> parent(nodes, -2);
  parent[td.root] = -1;
  std::vector<int> stack{td.root};
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    if (!td.children[v].empty() && td.children[v].size() != 2) return false;
    for (int c : td.children[v]) {
      if (parent[c] != -2) return false;
      parent[c] = v;
      stack.push_back(c);
    }
  }
  if (seen != nodes) return false;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> holding;
    for (int x = 0; x < nodes; ++x)
      if (std::count(td.bags[x].begin(), td.bags[x].end(), v)) holding.push_back(x);
    if (holding.empty()) return false;
    // connected: exactly one holder whose parent does not hold v
    int tops = 0;
    for (int x : holding) {
      const int p = parent[x];
      if (p < 0 || !std::count(td.bags[p].begin(), td.bags[p].end(), v)) ++tops;
    }
    if (tops != 1) return false;
  }
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      if (!g.adjacent(u, v)) continue;
      bool covered = false;
      for (const auto& bag : td.bags)
        if (std::count(bag.begin(), bag.end(), u) && std::count(bag.begin(), bag.end(), v)) covered = true;
      if (!covered) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("block-cut forest of the nine-vertex example") {
  const auto g = testing_support::worked_example().graph;
  CHECK(g.block_count() == 6);
  CHECK(g.cut_vertices() == std::vector<int>{1, 2, 3});
  CHECK(g.roots() == std::vector<int>{0});
  CHECK(g.block_preorder().size() == 6);
  CHECK(g.parent_cut(g.block_preorder()[0]) == -1);
  CHECK(g.cut_preorder() == std::vector<int>{1, 2, 3});
  auto d = g.descendants(2);
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<int>{2, 4, 5, 6});
  CHECK(g.max_block_size() == 3);
  CHECK(g.vertex_preorder().size() == 9);
}

TEST_CASE("non-block graphs are rejected") {
  Adjacency c4{{1, 3}, {0, 2}, {1, 3}, {0, 2}};
  CHECK_THROWS_AS(BlockCutTree::from_adjacency(c4), NotABlockGraph);
  Adjacency asym{{1}, {}};
  CHECK_THROWS_AS(BlockCutTree::from_adjacency(asym), InvalidInput);
  Adjacency loop{{0}};
  CHECK_THROWS_AS(BlockCutTree::from_adjacency(loop), InvalidInput);
}

TEST_CASE("diamond is not a block graph but K4 is") {
  Adjacency diamond{{1, 2, 3}, {0, 2}, {0, 1, 3}, {0, 2}};
  CHECK_THROWS_AS(BlockCutTree::from_adjacency(diamond), NotABlockGraph);
  Adjacency k4{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  const auto g = BlockCutTree::from_adjacency(k4);
  CHECK(g.block_count() == 1);
  CHECK(g.cut_count() == 0);
}

TEST_CASE("isolated vertices and forests") {
  const auto g = BlockCutTree::from_blocks(5, {{0, 1}, {3, 4}});
  CHECK(g.component_count() == 3);
  CHECK(g.block_count() == 3);
  CHECK(g.cut_count() == 0);
  const auto td = tree_decomposition(g);
  CHECK(valid_decomposition(g, td));
}

TEST_CASE("tree decompositions of all small block graphs are valid") {
  int count = 0;
  testing_support::for_each_block_graph(6, 4, [&](int n, const std::vector<std::vector<int>>& blocks) {
    const auto g = BlockCutTree::from_blocks(n, blocks);
    const auto td = tree_decomposition(g);
    CHECK(valid_decomposition(g, td));
    CHECK(td.width() == std::max(0, g.max_block_size() - 1));
    ++count;
  });
  CHECK(count > 100);
}

TEST_CASE("descendant sets partition the component below a cut vertex") {
  const auto g = testing_support::worked_example().graph;
  for (int v : g.cut_vertices()) {
    std::set<int> all{v};
    for (std::size_t d = 1; d <= g.child_blocks(v).size(); ++d)
      for (int x : g.descendants_d(v, static_cast<int>(d)))
        if (x != v) CHECK(all.insert(x).second);
    auto whole = g.descendants(v);
    CHECK(std::set<int>(whole.begin(), whole.end()) == all);
  }
  CHECK_THROWS_AS(g.descendants(42), std::out_of_range);
}

TEST_CASE("random partitions respect bounds and are uniform") {
  Rng rng(3);
  std::map<std::vector<int>, int> freq;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    auto p = random_partition(12, 4, 2, 5, rng);
    CHECK(std::accumulate(p.begin(), p.end(), 0) == 12);
    CHECK(std::is_sorted(p.rbegin(), p.rend()));
    for (int x : p) CHECK((x >= 2 && x <= 5));
    ++freq[p];
  }
  // Independent enumeration of the support.
  int support = 0;
  for (int a = 2; a <= 5; ++a)
    for (int b = 2; b <= a; ++b)
      for (int c = 2; c <= b; ++c)
        for (int d = 2; d <= c; ++d)
          if (a + b + c + d == 12) ++support;
  CHECK(static_cast<int>(freq.size()) == support);
  for (const auto& [p, f] : freq) {
    const double expected = static_cast<double>(draws) / support;
    CHECK(f > expected * 0.85);
    CHECK(f < expected * 1.15);
  }
  CHECK_THROWS_AS(random_partition(3, 2, 2, 5, rng), Infeasible);
}

TEST_CASE("generated block graphs have the requested blocks") {
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    const int m = 2 + it % 6;
    const int n = 2 + it % 30;
    for (auto bf : {BFunction::Min, BFunction::Avg, BFunction::Max}) {
      const int b = b_function(n, m, bf);
      auto sizes = random_partition(n + b - 1, b, 2, m, rng);
      const auto g = generate_block_graph(sizes, rng);
      CHECK(g.n() == n);
      CHECK(g.block_count() == b);
      CHECK(g.component_count() == 1);
      std::vector<int> got;
      for (const auto& blk : g.blocks()) got.push_back(static_cast<int>(blk.size()));
      std::sort(got.rbegin(), got.rend());
      CHECK(got == sizes);
    }
  }
}

TEST_CASE("block-count functions") {
  CHECK(b_function(9, 3, BFunction::Min) == 4);
  CHECK(b_function(9, 3, BFunction::Max) == 8);
  CHECK(b_function(9, 3, BFunction::Avg) == 6);
  CHECK(b_function(50, 8, BFunction::Min) == 7);
}
