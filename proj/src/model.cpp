#include "blocksched/model.hpp"

#include <algorithm>
#include <numeric>

#include "blocksched/errors.hpp"

namespace bsched {

MachineEnv MachineEnv::identical(int m) {
  MachineEnv e;
  e.kind = EnvKind::Identical;
  e.m = m;
  return e;
}

MachineEnv MachineEnv::uniform(std::vector<std::int64_t> speeds) {
  MachineEnv e;
  e.kind = EnvKind::Uniform;
  e.m = static_cast<int>(speeds.size());
  e.speeds = std::move(speeds);
  return e;
}

MachineEnv MachineEnv::unrelated(std::vector<std::vector<std::int64_t>> times) {
  MachineEnv e;
  e.kind = EnvKind::Unrelated;
  e.m = static_cast<int>(times.size());
  e.times = std::move(times);
  return e;
}

void Instance::validate() const {
  if (env.m < 1) throw InvalidInput("need at least one machine");
  switch (env.kind) {
    case EnvKind::Identical:
      break;
    case EnvKind::Uniform:
      if (static_cast<int>(env.speeds.size()) != env.m)
        throw InvalidInput("speed list length differs from m");
      for (std::size_t i = 0; i < env.speeds.size(); ++i) {
        if (env.speeds[i] <= 0) throw InvalidInput("speeds must be positive");
        if (i > 0 && env.speeds[i] > env.speeds[i - 1])
          throw InvalidInput("speeds must be sorted non-increasing");
      }
      break;
    case EnvKind::Unrelated:
      if (static_cast<int>(env.times.size()) != env.m)
        throw InvalidInput("time matrix needs m rows");
      for (const auto& row : env.times) {
        if (static_cast<int>(row.size()) != n())
          throw InvalidInput("time matrix rows need n entries");
        for (auto x : row)
          if (x <= 0) throw InvalidInput("times must be positive");
      }
      break;
  }
  if (env.kind != EnvKind::Unrelated) {
    if (static_cast<int>(proc.size()) != n()) throw InvalidInput("need one p_j per job");
    for (auto p : proc)
      if (p <= 0) throw InvalidInput("processing times must be positive");
  }
}

bool Instance::unit_jobs() const {
  if (env.kind == EnvKind::Unrelated) {
    for (const auto& row : env.times)
      for (auto x : row)
        if (x != 1) return false;
    return true;
  }
  return std::all_of(proc.begin(), proc.end(), [](std::int64_t p) { return p == 1; });
}

ExactTime Instance::time(int machine, int job) const {
  switch (env.kind) {
    case EnvKind::Identical:
      return ExactTime(proc[job]);
    case EnvKind::Uniform:
      return ExactTime(proc[job], env.speeds[machine]);
    case EnvKind::Unrelated:
      return ExactTime(env.times[machine][job]);
  }
  return ExactTime(0);
}

std::vector<std::int64_t> Instance::speeds() const {
  if (env.kind == EnvKind::Uniform) return env.speeds;
  if (env.kind == EnvKind::Identical) return std::vector<std::int64_t>(env.m, 1);
  throw InvalidInput("unrelated machines have no speeds");
}

ScaledTimes scaled_times(const Instance& inst) {
  ScaledTimes st;
  const int m = inst.m(), n = inst.n();
  st.t.assign(m, std::vector<std::int64_t>(n, 0));
  switch (inst.env.kind) {
    case EnvKind::Identical:
      for (int i = 0; i < m; ++i) st.t[i] = inst.proc;
      break;
    case EnvKind::Unrelated:
      st.t = inst.env.times;
      break;
    case EnvKind::Uniform: {
      std::int64_t l = 1;
      for (auto s : inst.env.speeds) l = std::lcm(l, s);
      st.scale = l;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) st.t[i][j] = inst.proc[j] * (l / inst.env.speeds[i]);
      break;
    }
  }
  return st;
}

bool is_feasible(const Instance& inst, const Schedule& sched) {
  if (static_cast<int>(sched.assign.size()) != inst.n()) return false;
  for (int a : sched.assign)
    if (a < 0 || a >= inst.m()) return false;
  for (const auto& b : inst.graph.blocks())
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (sched.assign[b[i]] == sched.assign[b[j]]) return false;
  return true;
}

std::vector<ExactTime> machine_loads(const Instance& inst, const Schedule& sched) {
  if (static_cast<int>(sched.assign.size()) != inst.n())
    throw InvalidInput("schedule does not cover every job");
  std::vector<std::int64_t> raw(inst.m(), 0);
  for (int j = 0; j < inst.n(); ++j) {
    const int i = sched.assign[j];
    if (i < 0 || i >= inst.m()) throw InvalidInput("machine id out of range");
    raw[i] += inst.env.kind == EnvKind::Unrelated ? inst.env.times[i][j] : inst.proc[j];
  }
  std::vector<ExactTime> loads(inst.m());
  for (int i = 0; i < inst.m(); ++i)
    loads[i] = inst.env.kind == EnvKind::Uniform ? ExactTime(raw[i], inst.env.speeds[i])
                                                 : ExactTime(raw[i]);
  return loads;
}

ExactTime makespan(const Instance& inst, const Schedule& sched) {
  ExactTime best(0);
  for (const auto& l : machine_loads(inst, sched)) best = std::max(best, l);
  return best;
}

ExactTime identical_lower_bound(const Instance& inst) {
  if (inst.env.kind != EnvKind::Identical)
    throw InvalidInput("lower bound defined for identical machines");
  std::int64_t sum = 0, pmax = 0;
  for (auto p : inst.proc) {
    sum += p;
    pmax = std::max(pmax, p);
  }
  ExactTime lb = std::max(ExactTime(sum, inst.m()), ExactTime(pmax));
  if (inst.unit_jobs())
    lb = std::max(lb, ExactTime((inst.n() + inst.m() - 1) / inst.m()));
  return lb;
}

}  // namespace bsched
