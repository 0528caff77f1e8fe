#include "blocksched/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "blocksched/errors.hpp"

namespace bsched {

OracleResult brute_force(const Instance& inst, const OracleOptions& opts) {
  const int n = inst.n(), m = inst.m();
  if (n > opts.cap)
    throw CapExceeded("oracle limited to " + std::to_string(opts.cap) + " jobs");
  if (!opts.fixed.empty() && static_cast<int>(opts.fixed.size()) != n)
    throw InvalidInput("fixed assignment needs one entry per job");

  const ScaledTimes st = scaled_times(inst);
  const std::vector<int> order = inst.graph.vertex_preorder();
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> earlier(n);
  for (int j = 0; j < n; ++j)
    for (int b : inst.graph.blocks_of(j))
      for (int x : inst.graph.block(b))
        if (x != j && pos[x] < pos[j]) earlier[j].push_back(x);

  const bool symmetric =
      opts.prune && opts.fixed.empty() && inst.env.kind == EnvKind::Identical;
  std::vector<int> assign(n, -1), best_assign;
  std::vector<std::int64_t> load(m, 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  // Volume and single-job lower bound; the search stops once it is met.
  std::int64_t lb = 0;
  for (int j = 0; j < n; ++j) {
    std::int64_t t = st.t[0][j];
    for (int i = 1; i < m; ++i) t = std::min(t, st.t[i][j]);
    lb = std::max(lb, t);
  }
  if (inst.env.kind != EnvKind::Unrelated) {
    __int128 work = 0, cap = 0;
    for (auto p : inst.proc) work += p;
    for (auto s : inst.speeds()) cap += s;
    work *= st.scale;
    lb = std::max<std::int64_t>(lb, static_cast<std::int64_t>((work + cap - 1) / cap));
  }
  bool done = false;

  std::function<void(int, int, std::int64_t)> dfs = [&](int depth, int used, std::int64_t cur) {
    if (depth == n) {
      if (cur < best) {
        best = cur;
        best_assign = assign;
        if (opts.prune && best <= lb) done = true;
      }
      return;
    }
    const int j = order[depth];
    int lo = 0, hi = m - 1;
    if (!opts.fixed.empty() && opts.fixed[j] >= 0) lo = hi = opts.fixed[j];
    if (symmetric) hi = std::min(hi, used);
    for (int i = lo; i <= hi && !done; ++i) {
      bool clash = false;
      for (int x : earlier[j])
        if (assign[x] == i) {
          clash = true;
          break;
        }
      if (clash) continue;
      const std::int64_t nl = load[i] + st.t[i][j];
      if (opts.prune && nl >= best) continue;
      assign[j] = i;
      load[i] = nl;
      dfs(depth + 1, std::max(used, i + 1), std::max(cur, nl));
      load[i] -= st.t[i][j];
      assign[j] = -1;
    }
  };
  dfs(0, 0, 0);
  if (best_assign.empty() && n > 0) throw Infeasible("no conflict-free schedule");
  if (n == 0) best = 0;
  return OracleResult{Schedule{best_assign}, ExactTime(best, st.scale)};
}

}  // namespace bsched
