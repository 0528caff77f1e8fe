#include "blocksched/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "blocksched/errors.hpp"

namespace bsched {

namespace {

void check_simple(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::set<int>> sets(n);
  for (int v = 0; v < n; ++v) {
    for (int w : adj[v]) {
      if (w < 0 || w >= n) throw InvalidInput("vertex id out of range");
      if (w == v) throw InvalidInput("self-loop at vertex " + std::to_string(v));
      if (!sets[v].insert(w).second)
        throw InvalidInput("duplicate edge at vertex " + std::to_string(v));
    }
  }
  for (int v = 0; v < n; ++v)
    for (int w : sets[v])
      if (!sets[w].count(v)) throw InvalidInput("adjacency is not symmetric");
}

// Smallest vertex of block b other than v; singleton blocks sort last.
int key_without(const std::vector<int>& block, int v) {
  for (int x : block)
    if (x != v) return x;
  return std::numeric_limits<int>::max();
}

}  // namespace

BlockCutTree BlockCutTree::from_adjacency(const Adjacency& adj) {
  check_simple(adj);
  const int n = static_cast<int>(adj.size());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> edge_stack;
  std::vector<std::vector<int>> comps;
  int timer = 0;

  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  std::vector<Frame> frames;

  auto close_component = [&](int u, int v) {
    std::vector<int> verts;
    long long edges = 0;
    while (true) {
      auto e = edge_stack.back();
      edge_stack.pop_back();
      ++edges;
      verts.push_back(e.first);
      verts.push_back(e.second);
      if (e.first == u && e.second == v) break;
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const long long c = static_cast<long long>(verts.size());
    if (edges != c * (c - 1) / 2)
      throw NotABlockGraph("biconnected component of size " + std::to_string(c) +
                           " is not a clique");
    comps.push_back(std::move(verts));
  };

  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    if (adj[root].empty()) {
      comps.push_back({root});
      continue;
    }
    frames.push_back({root, -1, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      const int v = f.v;
      if (f.next < adj[v].size()) {
        const int w = adj[v][f.next++];
        if (disc[w] == -1) {
          edge_stack.emplace_back(v, w);
          disc[w] = low[w] = timer++;
          frames.push_back({w, v, 0});
        } else if (w != f.parent && disc[w] < disc[v]) {
          edge_stack.emplace_back(v, w);
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        frames.pop_back();
        if (!frames.empty()) {
          const int u = frames.back().v;
          low[u] = std::min(low[u], low[v]);
          if (low[v] >= disc[u]) close_component(u, v);
        }
      }
    }
  }

  BlockCutTree t;
  t.n_ = n;
  std::sort(comps.begin(), comps.end());
  t.blocks_ = std::move(comps);
  t.blocks_of_.assign(n, {});
  for (int b = 0; b < t.block_count(); ++b)
    for (int v : t.blocks_[b]) t.blocks_of_[v].push_back(b);
  t.is_cut_.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    if (t.blocks_of_[v].size() >= 2) {
      t.is_cut_[v] = 1;
      t.cut_vertices_.push_back(v);
    }
  }
  t.build_rooting();
  return t;
}

BlockCutTree BlockCutTree::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  if (n < 0) throw InvalidInput("negative vertex count");
  std::vector<std::set<int>> sets(n);
  for (const auto& b : blocks) {
    for (int v : b)
      if (v < 0 || v >= n) throw InvalidInput("vertex id out of range in block");
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        if (b[i] == b[j]) throw InvalidInput("repeated vertex in block");
        sets[b[i]].insert(b[j]);
        sets[b[j]].insert(b[i]);
      }
  }
  Adjacency adj(n);
  for (int v = 0; v < n; ++v) adj[v].assign(sets[v].begin(), sets[v].end());
  return from_adjacency(adj);
}

void BlockCutTree::build_rooting() {
  const int nb = block_count();
  parent_cut_.assign(nb, -1);
  parent_block_.assign(n_, -1);
  child_cuts_.assign(nb, {});
  child_blocks_.assign(n_, {});
  roots_.clear();
  block_preorder_.clear();
  cut_preorder_.clear();

  std::vector<char> seen(nb, 0);
  for (int v = 0; v < n_; ++v) {
    if (parent_block_[v] != -1) continue;
    // v is the smallest vertex of a fresh component.
    int root = -1;
    for (int b : blocks_of_[v])
      if (root == -1 || key_without(blocks_[b], v) < key_without(blocks_[root], v))
        root = b;
    roots_.push_back(root);

    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const int b = stack.back();
      stack.pop_back();
      block_preorder_.push_back(b);
      std::vector<int> pushes;
      for (int x : blocks_[b]) {
        if (x == parent_cut_[b]) continue;
        parent_block_[x] = b;
        if (!is_cut_[x]) continue;
        child_cuts_[b].push_back(x);
        cut_preorder_.push_back(x);
        std::vector<int> kids;
        for (int c : blocks_of_[x])
          if (c != b) kids.push_back(c);
        std::sort(kids.begin(), kids.end(), [&](int p, int q) {
          return key_without(blocks_[p], x) < key_without(blocks_[q], x);
        });
        for (int c : kids) {
          parent_cut_[c] = x;
          seen[c] = 1;
        }
        child_blocks_[x] = kids;
        pushes.insert(pushes.end(), kids.begin(), kids.end());
      }
      for (auto it = pushes.rbegin(); it != pushes.rend(); ++it) stack.push_back(*it);
    }
  }
  // cut_preorder_ above follows discovery order of blocks; rebuild it along
  // the block pre-order so enumeration order is the tree pre-order.
  cut_preorder_.clear();
  for (int b : block_preorder_)
    for (int c : child_cuts_[b]) cut_preorder_.push_back(c);
}

int BlockCutTree::max_block_size() const {
  int best = 0;
  for (const auto& b : blocks_) best = std::max(best, static_cast<int>(b.size()));
  return best;
}

bool BlockCutTree::adjacent(int u, int v) const {
  if (u == v) return false;
  const auto& a = blocks_of_[u];
  const auto& b = blocks_of_[v];
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return blocks_[a[i]].size() >= 2;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

Adjacency BlockCutTree::adjacency() const {
  Adjacency adj(n_);
  for (const auto& b : blocks_)
    for (int x : b)
      for (int y : b)
        if (x != y) adj[x].push_back(y);
  for (auto& l : adj) std::sort(l.begin(), l.end());
  return adj;
}

std::vector<int> BlockCutTree::vertex_preorder() const {
  std::vector<int> order;
  std::vector<char> seen(n_, 0);
  for (int b : block_preorder_)
    for (int v : blocks_[b])
      if (!seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
  return order;
}

void BlockCutTree::collect_below_block(int b, std::vector<int>& out) const {
  std::vector<int> stack{b};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int v : blocks_[x])
      if (v != parent_cut_[x]) out.push_back(v);
    for (int c : child_cuts_[x])
      for (int cb : child_blocks_[c]) stack.push_back(cb);
  }
}

std::vector<int> BlockCutTree::descendants(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
  std::vector<int> out{v};
  for (int cb : child_blocks_[v]) collect_below_block(cb, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> BlockCutTree::descendants_d(int v, int d) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
  if (d < 1 || d > static_cast<int>(child_blocks_[v].size()))
    throw std::out_of_range("child index out of range");
  std::vector<int> out{v};
  collect_below_block(child_blocks_[v][d - 1], out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> BlockCutTree::descendants_of_subset(int b, const std::vector<int>& U) const {
  if (b < 0 || b >= block_count()) throw std::out_of_range("block out of range");
  std::vector<int> out;
  for (int u : U) {
    if (!std::binary_search(blocks_[b].begin(), blocks_[b].end(), u) ||
        u == parent_cut_[b])
      throw std::out_of_range("vertex not in block below its parent");
    out.push_back(u);
    if (parent_block_[u] == b)
      for (int cb : child_blocks_[u]) collect_below_block(cb, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int TreeDecomposition::width() const {
  int w = 0;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
  return w - 1;
}

namespace {

int binarize(TreeDecomposition& td, const std::vector<int>& bag, std::vector<int> kids) {
  auto make = [&](const std::vector<int>& contents, std::vector<int> ch) {
    td.bags.push_back(contents);
    td.children.push_back(std::move(ch));
    return static_cast<int>(td.bags.size()) - 1;
  };
  if (kids.empty()) return make(bag, {});
  if (kids.size() == 1) {
    const int empty = make({}, {});
    return make(bag, {kids[0], empty});
  }
  if (kids.size() == 2) return make(bag, kids);
  const int first = kids.front();
  kids.erase(kids.begin());
  const int dup = binarize(td, bag, std::move(kids));
  return make(bag, {first, dup});
}

int build_block(TreeDecomposition& td, const BlockCutTree& t, int b) {
  std::vector<int> kids;
  for (int c : t.child_cuts(b))
    for (int cb : t.child_blocks(c)) kids.push_back(build_block(td, t, cb));
  return binarize(td, t.block(b), std::move(kids));
}

}  // namespace

TreeDecomposition tree_decomposition(const BlockCutTree& tree) {
  TreeDecomposition td;
  std::vector<int> comps;
  for (int r : tree.roots()) comps.push_back(build_block(td, tree, r));
  if (comps.empty()) {
    td.bags.push_back({});
    td.children.push_back({});
    td.root = 0;
  } else if (comps.size() == 1) {
    td.root = comps[0];
  } else {
    td.root = binarize(td, {}, comps);
  }
  return td;
}

std::vector<int> random_partition(int total, int parts, int lo, int hi, Rng& rng) {
  if (parts < 0 || lo < 1 || hi < lo) throw InvalidInput("bad partition bounds");
  if (static_cast<long long>(parts) * lo > total ||
      static_cast<long long>(parts) * hi < total)
    throw Infeasible("partition bounds make the total unreachable");
  const int width = hi - lo + 1;
  // count[p][t][x - lo]: partitions of t into exactly p parts, each in [lo, x].
  std::vector<std::vector<std::vector<std::uint64_t>>> count(
      parts + 1, std::vector<std::vector<std::uint64_t>>(
                     total + 1, std::vector<std::uint64_t>(width, 0)));
  for (int x = 0; x < width; ++x) count[0][0][x] = 1;
  for (int p = 1; p <= parts; ++p)
    for (int t = 0; t <= total; ++t)
      for (int x = 0; x < width; ++x) {
        std::uint64_t sum = 0;
        for (int y = 0; y <= x && lo + y <= t; ++y) {
          if (__builtin_add_overflow(sum, count[p - 1][t - lo - y][y], &sum))
            throw std::overflow_error("partition count overflow");
        }
        count[p][t][x] = sum;
      }

  std::vector<int> out;
  int t = total;
  int cap = width - 1;
  for (int p = parts; p >= 1; --p) {
    std::uniform_int_distribution<std::uint64_t> pick(0, count[p][t][cap] - 1);
    std::uint64_t r = pick(rng);
    int chosen = -1;
    for (int y = 0; y <= cap && lo + y <= t; ++y) {
      const std::uint64_t w = count[p - 1][t - lo - y][y];
      if (r < w) {
        chosen = y;
        break;
      }
      r -= w;
    }
    out.push_back(lo + chosen);
    t -= lo + chosen;
    cap = chosen;
  }
  return out;
}

BlockCutTree generate_block_graph(std::vector<int> sizes, Rng& rng) {
  if (sizes.empty()) throw InvalidInput("empty partition");
  for (int s : sizes)
    if (s < 1 || (s < 2 && sizes.size() > 1)) throw InvalidInput("block size too small");
  std::shuffle(sizes.begin(), sizes.end(), rng);
  std::vector<std::vector<int>> blocks;
  std::vector<int> first(sizes[0]);
  std::iota(first.begin(), first.end(), 0);
  blocks.push_back(first);
  int next = sizes[0];
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick_block(0, blocks.size() - 1);
    const auto& host = blocks[pick_block(rng)];
    std::uniform_int_distribution<std::size_t> pick_vertex(0, host.size() - 1);
    std::vector<int> nb{host[pick_vertex(rng)]};
    for (int j = 1; j < sizes[i]; ++j) nb.push_back(next++);
    blocks.push_back(std::move(nb));
  }
  return BlockCutTree::from_blocks(next, blocks);
}

int b_function(int n, int m, BFunction which) {
  if (n < 1 || m < 2) throw InvalidInput("b-function needs n >= 1 and m >= 2");
  const int bmin = std::max(1, (n - 1 + m - 2) / (m - 1));
  const int bmax = std::max(1, n - 1);
  switch (which) {
    case BFunction::Min:
      return bmin;
    case BFunction::Max:
      return bmax;
    case BFunction::Avg:
      return (bmin + bmax) / 2;
  }
  return bmin;
}

}  // namespace bsched
