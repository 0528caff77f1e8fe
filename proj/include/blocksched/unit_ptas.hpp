#pragma once

#include <string>

#include "blocksched/budget.hpp"
#include "blocksched/model.hpp"

namespace bsched {

// Which sub-algorithms produced the answer: the bounded-makespan search
// alone, followed by the treewidth DP, or followed by greedy.
enum class PtasPhase { C, CT, CG };

std::string to_string(PtasPhase phase);

struct UnitPtasResult {
  Schedule schedule;
  PtasPhase tag = PtasPhase::C;
  int k = 0;  // level reached by the bounded search (0 if skipped)
};

// Unit jobs on identical machines. With early_abort the bounded search
// starts at ceil(n/m) instead of 1.
UnitPtasResult ptas_trace(const Instance& inst, Rational eps, const Budget& budget = Budget(),
                          bool early_abort = false);

Schedule ptas_unit(const Instance& inst, Rational eps, const Budget& budget = Budget());

}  // namespace bsched
