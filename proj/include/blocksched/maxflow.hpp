#pragma once

#include <cstdint>
#include <vector>

namespace bsched {

// Dinic: BFS level graph plus blocking flow by DFS with arc pointers.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes = 0);

  int add_node();
  int add_edge(int from, int to, std::int64_t cap);
  std::int64_t run(int source, int sink);
  std::int64_t flow(int edge) const;
  int node_count() const { return static_cast<int>(graph_.size()); }
  int edge_count() const { return static_cast<int>(refs_.size()); }

 private:
  struct Arc {
    int to;
    int rev;
    std::int64_t cap;
  };
  bool levels(int s, int t);
  std::int64_t push(int v, int t, std::int64_t limit);

  std::vector<std::vector<Arc>> graph_;
  std::vector<std::pair<int, int>> refs_;
  std::vector<std::int64_t> initial_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace bsched
