#include "blocksched/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace bsched {

MaxFlow::MaxFlow(int nodes) : graph_(nodes) {}

int MaxFlow::add_node() {
  graph_.emplace_back();
  return node_count() - 1;
}

int MaxFlow::add_edge(int from, int to, std::int64_t cap) {
  const int a = static_cast<int>(graph_[from].size());
  const int b = static_cast<int>(graph_[to].size()) + (from == to ? 1 : 0);
  graph_[from].push_back({to, b, cap});
  graph_[to].push_back({from, a, 0});
  refs_.emplace_back(from, a);
  initial_.push_back(cap);
  return edge_count() - 1;
}

bool MaxFlow::levels(int s, int t) {
  level_.assign(graph_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const Arc& a : graph_[v])
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::push(int v, int t, std::int64_t limit) {
  if (v == t) return limit;
  for (std::size_t& i = next_[v]; i < graph_[v].size(); ++i) {
    Arc& a = graph_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const std::int64_t got = push(a.to, t, std::min(limit, a.cap));
    if (got > 0) {
      a.cap -= got;
      graph_[a.to][a.rev].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  if (source == sink) return 0;
  std::int64_t total = 0;
  while (levels(source, sink)) {
    next_.assign(graph_.size(), 0);
    while (std::int64_t f = push(source, sink, std::numeric_limits<std::int64_t>::max()))
      total += f;
  }
  return total;
}

std::int64_t MaxFlow::flow(int edge) const {
  const auto [v, i] = refs_[edge];
  return initial_[edge] - graph_[v][i].cap;
}

}  // namespace bsched
