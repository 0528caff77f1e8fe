#include "blocksched/greedy.hpp"

#include <algorithm>
#include <queue>

#include "blocksched/errors.hpp"

namespace bsched {

Schedule greedy_schedule(const Instance& inst, const GreedyObserver& observer) {
  if (inst.env.kind != EnvKind::Identical)
    throw InvalidInput("greedy needs identical machines");
  const int m = inst.m();
  const auto& g = inst.graph;
  if (g.max_block_size() > m) throw Infeasible("a block is larger than the machine count");

  using Entry = std::pair<std::int64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  std::vector<std::int64_t> load(m, 0);
  for (int i = 0; i < m; ++i) heap.push({0, i});

  Schedule s;
  s.assign.assign(g.n(), -1);
  for (int b : g.block_preorder()) {
    std::vector<int> jobs = g.block(b);
    std::stable_sort(jobs.begin(), jobs.end(), [&](int x, int y) {
      return inst.proc[x] > inst.proc[y];
    });
    std::vector<int> machines;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      machines.push_back(heap.top().second);
      heap.pop();
    }
    const int cut = g.parent_cut(b);
    if (cut != -1) {
      auto it = std::find(machines.begin(), machines.end(), s.assign[cut]);
      if (it == machines.end()) it = machines.end() - 1;
      heap.push({load[*it], *it});
      machines.erase(it);
      jobs.erase(std::find(jobs.begin(), jobs.end(), cut));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      s.assign[jobs[i]] = machines[i];
      load[machines[i]] += inst.proc[jobs[i]];
    }
    for (int i : machines) heap.push({load[i], i});
    if (observer) observer(load);
  }
  return s;
}

UnitLoadReport greedy_unit_load_bound(const Instance& inst) {
  if (!inst.unit_jobs()) throw InvalidInput("unit-load bound needs unit jobs");
  const int m = inst.m(), n = inst.n();
  if (m < 2) throw InvalidInput("unit-load bound needs m >= 2");
  UnitLoadReport r;
  r.schedule = greedy_schedule(inst);
  r.bound = (n + m - 2) / (m - 1);
  const int rem = n % (m - 1);
  r.required_below = rem == 0 ? 1 : m - rem;
  std::vector<int> count(m, 0);
  for (int a : r.schedule.assign) ++count[a];
  bool within = true;
  for (int c : count) {
    if (c > r.bound) within = false;
    if (c < r.bound) ++r.below_bound;
  }
  r.holds = within && r.below_bound >= r.required_below;
  return r;
}

}  // namespace bsched
