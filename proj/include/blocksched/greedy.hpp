#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "blocksched/model.hpp"

namespace bsched {

// Called after each block is placed with the current machine loads.
using GreedyObserver = std::function<void(const std::vector<std::int64_t>& loads)>;

// 2-approximation for identical machines. Throws Infeasible if a block has
// more than m jobs.
Schedule greedy_schedule(const Instance& inst, const GreedyObserver& observer = {});

struct UnitLoadReport {
  Schedule schedule;
  int bound = 0;             // ceil(n / (m - 1))
  int below_bound = 0;       // machines with strictly fewer jobs than bound
  int required_below = 0;    // 1 if (m - 1) | n, otherwise m - n mod (m - 1)
  bool holds = false;
};

// Greedy on unit jobs together with the per-machine count check.
UnitLoadReport greedy_unit_load_bound(const Instance& inst);

}  // namespace bsched
