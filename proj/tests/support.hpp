#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "blocksched/bench.hpp"
#include "blocksched/graph.hpp"
#include "blocksched/model.hpp"
#include "blocksched/pattern_dp.hpp"

namespace testing_support {

using namespace bsched;

inline Instance identical_instance(int n, const std::vector<std::vector<int>>& blocks, int m,
                                   std::vector<std::int64_t> proc = {}) {
  Instance inst;
  inst.graph = BlockCutTree::from_blocks(n, blocks);
  inst.env = MachineEnv::identical(m);
  inst.proc = proc.empty() ? std::vector<std::int64_t>(n, 1) : std::move(proc);
  inst.validate();
  return inst;
}

// m cliques of m-1 jobs of length p/m, then one job of length p.
inline Instance hard_instance(int m, std::int64_t p) {
  std::vector<std::vector<int>> blocks;
  std::vector<std::int64_t> proc;
  int next = 0;
  for (int c = 0; c < m; ++c) {
    std::vector<int> b;
    for (int j = 0; j < m - 1; ++j) {
      b.push_back(next++);
      proc.push_back(p / m);
    }
    if (b.size() > 1) blocks.push_back(b);
  }
  proc.push_back(p);
  return identical_instance(next + 1, blocks, m, proc);
}

// Nine unit jobs J1..J9 as vertices 0..8 on three machines.
inline Instance worked_example() {
  return identical_instance(9, {{0, 1}, {1, 2, 3}, {2, 4, 5}, {2, 6}, {3, 7}, {3, 8}}, 3);
}

inline Instance random_identical(int n, int m, BFunction b, ProcDist proc, std::uint64_t seed) {
  Rng rng(seed);
  return random_instance(n, m, b_function(n, m, b), proc, SpeedSpec{}, rng);
}

inline Instance random_uniform(int n, int m, BFunction b, ProcDist proc,
                               const std::vector<std::int64_t>& speed_pool, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = random_instance(n, m, b_function(n, m, b), proc, SpeedSpec{}, rng);
  std::uniform_int_distribution<std::size_t> pick(0, speed_pool.size() - 1);
  std::vector<std::int64_t> s(m);
  for (auto& x : s) x = speed_pool[pick(rng)];
  std::sort(s.rbegin(), s.rend());
  inst.env = MachineEnv::uniform(s);
  return inst;
}

inline Instance random_unrelated(int n, int m, BFunction b, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = random_instance(n, m, b_function(n, m, b), ProcDist::Unit, SpeedSpec{}, rng);
  std::uniform_int_distribution<std::int64_t> pd(1, 5);
  std::vector<std::vector<std::int64_t>> t(m, std::vector<std::int64_t>(n));
  for (auto& row : t)
    for (auto& x : row) x = pd(rng);
  inst.env = MachineEnv::unrelated(t);
  inst.proc.clear();
  return inst;
}

// Every block graph on at most max_n vertices up to relabeling: blocks are
// added one at a time, either hanging off an existing vertex or starting a
// new component.
inline void for_each_block_graph(int max_n, int max_block,
                                 const std::function<void(int, const std::vector<std::vector<int>>&)>& fn) {
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int n) {
    fn(n, blocks);
    for (int size = 2; size <= max_block; ++size) {
      // attach to an existing vertex
      for (int v = 0; v < n && n + size - 1 <= max_n; ++v) {
        std::vector<int> b{v};
        for (int j = 0; j < size - 1; ++j) b.push_back(n + j);
        blocks.push_back(b);
        rec(n + size - 1);
        blocks.pop_back();
      }
    }
    // a new isolated vertex or a new component block
    if (n + 1 <= max_n) rec(n + 1);
  };
  rec(1);
}

// Whole-component pattern of each proper coloring with classes of size at
// most k, computed by direct enumeration.
inline std::set<Pattern> brute_force_patterns(const BlockCutTree& g, int root, int m, int k) {
  std::vector<int> comp;
  {
    std::vector<char> seen(g.n(), 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int b : g.blocks_of(v))
        for (int x : g.block(b))
          if (!seen[x]) {
            seen[x] = 1;
            stack.push_back(x);
          }
    }
  }
  std::set<Pattern> out;
  std::vector<int> color(g.n(), -1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == comp.size()) {
      std::vector<int> size(m, 0);
      for (int v : comp) ++size[color[v]];
      Pattern p{std::vector<int>(k + 1, 0), std::vector<int>(k + 1, 0)};
      for (int c = 0; c < m; ++c) {
        if (size[c] > k) return;
        if (c == color[root])
          ++p.a[size[c]];
        else
          ++p.b[size[c]];
      }
      out.insert(p);
      return;
    }
    const int v = comp[i];
    for (int c = 0; c < m; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i; ++j)
        if (color[comp[j]] == c && g.adjacent(v, comp[j])) ok = false;
      if (!ok) continue;
      color[v] = c;
      rec(i + 1);
      color[v] = -1;
    }
  };
  rec(0);
  return out;
}

}  // namespace testing_support
