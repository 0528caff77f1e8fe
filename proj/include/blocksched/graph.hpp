#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bsched {

using Rng = std::mt19937_64;
using Adjacency = std::vector<std::vector<int>>;

// Block-cut forest of a block graph. Blocks are stored sorted, each block's
// vertex list ascending. Every component is rooted at the block holding its
// smallest vertex; children follow ascending minimum vertex id.
class BlockCutTree {
 public:
  BlockCutTree() = default;

  // Throws NotABlockGraph if a biconnected component is not a clique and
  // InvalidInput if the adjacency is not a simple undirected graph.
  static BlockCutTree from_adjacency(const Adjacency& adj);
  // Expands the given vertex sets to an adjacency and rebuilds, so the
  // result is canonical even for non-maximal input sets.
  static BlockCutTree from_blocks(int n, const std::vector<std::vector<int>>& blocks);

  int n() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int b) const { return blocks_[b]; }
  const std::vector<int>& blocks_of(int v) const { return blocks_of_[v]; }
  bool is_cut(int v) const { return is_cut_[v] != 0; }
  const std::vector<int>& cut_vertices() const { return cut_vertices_; }
  int cut_count() const { return static_cast<int>(cut_vertices_.size()); }
  int max_block_size() const;
  bool adjacent(int u, int v) const;
  Adjacency adjacency() const;

  const std::vector<int>& roots() const { return roots_; }
  int component_count() const { return static_cast<int>(roots_.size()); }
  // Parent cut-vertex of a block, -1 for roots.
  int parent_cut(int b) const { return parent_cut_[b]; }
  // The block through which a vertex is reached from its root.
  int parent_block(int v) const { return parent_block_[v]; }
  const std::vector<int>& child_cuts(int b) const { return child_cuts_[b]; }
  const std::vector<int>& child_blocks(int v) const { return child_blocks_[v]; }
  const std::vector<int>& block_preorder() const { return block_preorder_; }
  // Cut-vertices in order of first appearance along block_preorder.
  const std::vector<int>& cut_preorder() const { return cut_preorder_; }
  // Vertices in block pre-order, each listed once.
  std::vector<int> vertex_preorder() const;

  // D(v): v and everything below it.
  std::vector<int> descendants(int v) const;
  // D_d(v) for the d-th child block of v (1-based).
  std::vector<int> descendants_d(int v, int d) const;
  // D(U) for U a subset of block b minus its parent cut-vertex.
  std::vector<int> descendants_of_subset(int b, const std::vector<int>& U) const;

 private:
  void build_rooting();
  void collect_below_block(int b, std::vector<int>& out) const;

  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::vector<int>> blocks_of_;
  std::vector<char> is_cut_;
  std::vector<int> cut_vertices_;
  std::vector<int> roots_;
  std::vector<int> parent_cut_;
  std::vector<int> parent_block_;
  std::vector<std::vector<int>> child_cuts_;
  std::vector<std::vector<int>> child_blocks_;
  std::vector<int> block_preorder_;
  std::vector<int> cut_preorder_;
};

// Binary tree decomposition: every node has 0 or 2 children.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::vector<int>> children;
  int root = -1;

  int width() const;
};

TreeDecomposition tree_decomposition(const BlockCutTree& tree);

// Uniform over multisets of exactly `parts` values in [lo, hi] summing to
// `total`, returned in non-increasing order. Throws Infeasible.
std::vector<int> random_partition(int total, int parts, int lo, int hi, Rng& rng);

// Shuffles the sizes, seeds a clique with the first, then attaches each
// further block at a uniformly chosen block and a uniform vertex of it.
BlockCutTree generate_block_graph(std::vector<int> sizes, Rng& rng);

enum class BFunction { Min, Avg, Max };
int b_function(int n, int m, BFunction which);

}  // namespace bsched
