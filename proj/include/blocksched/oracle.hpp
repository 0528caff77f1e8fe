#pragma once

#include <vector>

#include "blocksched/model.hpp"

namespace bsched {

struct OracleOptions {
  int cap = 12;
  bool prune = true;
  // Optional partial assignment the schedule must extend (-1 = free).
  std::vector<int> fixed;
};

struct OracleResult {
  Schedule schedule;
  ExactTime optimum;
};

// Exhaustive depth-first search. Throws CapExceeded when n > cap and
// Infeasible when no conflict-free schedule exists.
OracleResult brute_force(const Instance& inst, const OracleOptions& opts = {});

}  // namespace bsched
