#pragma once

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "blocksched/graph.hpp"

namespace bsched {

using ExactTime = boost::rational<std::int64_t>;
using Rational = boost::rational<std::int64_t>;

enum class EnvKind { Identical, Uniform, Unrelated };

struct MachineEnv {
  EnvKind kind = EnvKind::Identical;
  int m = 1;
  std::vector<std::int64_t> speeds;              // uniform only, non-increasing
  std::vector<std::vector<std::int64_t>> times;  // unrelated only, times[i][j]

  static MachineEnv identical(int m);
  static MachineEnv uniform(std::vector<std::int64_t> speeds);
  static MachineEnv unrelated(std::vector<std::vector<std::int64_t>> times);
};

struct Instance {
  BlockCutTree graph;
  MachineEnv env;
  std::vector<std::int64_t> proc;  // ignored for unrelated machines

  int n() const { return graph.n(); }
  int m() const { return env.m; }
  // Throws InvalidInput on shape or sign violations.
  void validate() const;
  bool unit_jobs() const;
  ExactTime time(int machine, int job) const;
  // Speeds for identical (all ones) or uniform machines.
  std::vector<std::int64_t> speeds() const;
};

struct Schedule {
  std::vector<int> assign;
  bool operator==(const Schedule&) const = default;
};

// Integer processing times on a common scale: time(i,j) = t[i][j] / scale.
struct ScaledTimes {
  std::vector<std::vector<std::int64_t>> t;
  std::int64_t scale = 1;
};
ScaledTimes scaled_times(const Instance& inst);

bool is_feasible(const Instance& inst, const Schedule& sched);
ExactTime makespan(const Instance& inst, const Schedule& sched);
std::vector<ExactTime> machine_loads(const Instance& inst, const Schedule& sched);
// max(sum p / m, p_max), and ceil(n/m) for unit jobs. Identical only.
ExactTime identical_lower_bound(const Instance& inst);

}  // namespace bsched
