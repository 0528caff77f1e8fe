#include "blocksched/uniform_flow.hpp"

#include <algorithm>
#include <thread>

#include "blocksched/errors.hpp"

namespace bsched {

namespace {

void require_unit_uniform(const Instance& inst) {
  if (inst.env.kind == EnvKind::Unrelated || !inst.unit_jobs())
    throw InvalidInput("flow algorithm needs unit jobs on uniform machines");
}

// Calls visit(f) for every adjacency-valid assignment of the cut-vertices in
// pre-order, in mixed-radix order. Stops when visit returns true.
template <class Visit>
bool for_each_assignment(const Instance& inst, ExactTime C, Visit&& visit) {
  const auto& g = inst.graph;
  const auto& cuts = g.cut_preorder();
  const int m = inst.m();
  std::vector<std::int64_t> room(m);
  for (int i = 0; i < m; ++i) room[i] = unit_capacity(inst, C, i);
  CutAssignment f(g.n(), -1);
  std::vector<std::vector<int>> earlier(cuts.size());
  for (std::size_t a = 0; a < cuts.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (g.adjacent(cuts[a], cuts[b])) earlier[a].push_back(cuts[b]);

  const std::size_t depth_total = cuts.size();
  std::vector<int> choice(depth_total, -1);
  std::size_t depth = 0;
  if (depth_total == 0) return visit(f);
  while (true) {
    const int v = cuts[depth];
    if (choice[depth] >= 0) {
      ++room[choice[depth]];
      f[v] = -1;
    }
    int next = choice[depth] + 1;
    for (; next < m; ++next) {
      if (room[next] <= 0) continue;
      bool clash = false;
      for (int u : earlier[depth])
        if (f[u] == next) clash = true;
      if (!clash) break;
    }
    if (next >= m) {
      choice[depth] = -1;
      if (depth == 0) return false;
      --depth;
      continue;
    }
    choice[depth] = next;
    f[v] = next;
    --room[next];
    if (depth + 1 == depth_total) {
      if (visit(f)) return true;
    } else {
      ++depth;
    }
  }
}

std::optional<Schedule> decode(const Instance& inst, const CutAssignment& f, FlowNetwork& net) {
  const std::int64_t value = net.solver.run(net.source, net.sink);
  if (value != static_cast<std::int64_t>(net.simplicial.size())) return std::nullopt;
  Schedule s;
  s.assign = f;
  s.assign.resize(inst.n(), -1);
  for (const auto& e : net.edges)
    if (e.kind == FlowEdge::Kind::JobPair && net.solver.flow(e.arc) > 0)
      s.assign[e.job] = e.machine;
  return s;
}

}  // namespace

std::vector<ExactTime> candidate_makespans(const Instance& inst) {
  require_unit_uniform(inst);
  std::vector<ExactTime> out;
  for (auto s : inst.speeds())
    for (int j = 1; j <= inst.n(); ++j) out.emplace_back(j, s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t unit_capacity(const Instance& inst, ExactTime C, int machine) {
  const std::int64_t s = inst.speeds()[machine];
  const __int128 num = static_cast<__int128>(C.numerator()) * s;
  return static_cast<std::int64_t>(num / C.denominator());
}

bool valid_cut_assignment(const Instance& inst, ExactTime C, const CutAssignment& f) {
  const auto& g = inst.graph;
  if (static_cast<int>(f.size()) != g.n()) return false;
  std::vector<std::int64_t> used(inst.m(), 0);
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_cut(v) != (f[v] >= 0)) return false;
    if (f[v] >= inst.m()) return false;
    if (f[v] >= 0) ++used[f[v]];
  }
  for (int i = 0; i < inst.m(); ++i)
    if (used[i] > unit_capacity(inst, C, i)) return false;
  const auto& cuts = g.cut_vertices();
  for (std::size_t a = 0; a < cuts.size(); ++a)
    for (std::size_t b = a + 1; b < cuts.size(); ++b)
      if (f[cuts[a]] == f[cuts[b]] && g.adjacent(cuts[a], cuts[b])) return false;
  return true;
}

FlowNetwork build_flow_network(const Instance& inst, ExactTime C, const CutAssignment& f) {
  require_unit_uniform(inst);
  if (!valid_cut_assignment(inst, C, f)) throw InvalidAssignment("invalid cut-vertex assignment");
  const auto& g = inst.graph;
  const int m = inst.m();
  FlowNetwork net;
  net.solver = MaxFlow(2);
  net.source = 0;
  net.sink = 1;
  std::vector<int> job_node(g.n(), -1);
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_cut(v)) continue;
    net.simplicial.push_back(v);
    job_node[v] = net.solver.add_node();
  }
  std::vector<int> pair_node(static_cast<std::size_t>(g.block_count()) * m);
  for (int b = 0; b < g.block_count(); ++b)
    for (int i = 0; i < m; ++i) pair_node[b * m + i] = net.solver.add_node();
  std::vector<int> machine_node(m);
  for (int i = 0; i < m; ++i) machine_node[i] = net.solver.add_node();

  auto edge = [&](FlowEdge e, int from, int to) {
    e.arc = net.solver.add_edge(from, to, e.cap);
    net.edges.push_back(e);
  };
  for (int v : net.simplicial)
    edge({FlowEdge::Kind::SourceJob, v, -1, -1, 1, -1}, net.source, job_node[v]);
  for (int v : net.simplicial) {
    const int b = g.blocks_of(v).front();
    for (int i = 0; i < m; ++i) {
      bool blocked = false;
      for (int x : g.block(b))
        if (g.is_cut(x) && f[x] == i) blocked = true;
      if (!blocked) edge({FlowEdge::Kind::JobPair, v, b, i, 1, -1}, job_node[v], pair_node[b * m + i]);
    }
  }
  for (int b = 0; b < g.block_count(); ++b)
    for (int i = 0; i < m; ++i)
      edge({FlowEdge::Kind::PairMachine, -1, b, i, 1, -1}, pair_node[b * m + i], machine_node[i]);
  for (int i = 0; i < m; ++i) {
    std::int64_t w = unit_capacity(inst, C, i);
    for (int v = 0; v < g.n(); ++v)
      if (f[v] == i) --w;
    edge({FlowEdge::Kind::MachineSink, -1, -1, i, w, -1}, machine_node[i], net.sink);
  }
  return net;
}

std::optional<Schedule> extend_cut_assignment(const Instance& inst, ExactTime C,
                                              const CutAssignment& f) {
  FlowNetwork net = build_flow_network(inst, C, f);
  return decode(inst, f, net);
}

Schedule solve_uniform_unit(const Instance& inst, const Budget& budget, int threads) {
  require_unit_uniform(inst);
  if (inst.graph.max_block_size() > inst.m()) throw Infeasible("a block is larger than m");
  if (inst.n() == 0) return Schedule{};
  threads = std::max(1, threads);
  const auto cands = candidate_makespans(inst);

  auto test = [&](ExactTime C) -> std::optional<Schedule> {
    std::optional<Schedule> found;
    if (threads == 1) {
      for_each_assignment(inst, C, [&](const CutAssignment& f) {
        budget.check_time();
        found = extend_cut_assignment(inst, C, f);
        return found.has_value();
      });
      return found;
    }
    std::vector<CutAssignment> batch;
    auto flush = [&]() {
      std::vector<std::optional<Schedule>> results(batch.size());
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t]() {
          for (std::size_t i = t; i < batch.size(); i += threads)
            results[i] = extend_cut_assignment(inst, C, batch[i]);
        });
      for (auto& th : pool) th.join();
      batch.clear();
      for (auto& r : results)
        if (r) {
          found = std::move(r);
          return true;
        }
      return false;
    };
    const bool done = for_each_assignment(inst, C, [&](const CutAssignment& f) {
      batch.push_back(f);
      if (batch.size() < 64u * threads) return false;
      budget.check_time();
      return flush();
    });
    if (!done && !batch.empty()) flush();
    return found;
  };

  std::size_t lo = 0, hi = cands.size() - 1;
  std::optional<Schedule> best;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto s = test(cands[mid])) {
      best = std::move(s);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!best || makespan(inst, *best) > cands[hi]) best = test(cands[hi]);
  if (!best) throw Infeasible("no schedule found");
  return *best;
}

}  // namespace bsched
