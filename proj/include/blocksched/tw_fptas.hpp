#pragma once

#include <cstdint>
#include <optional>

#include "blocksched/budget.hpp"
#include "blocksched/graph.hpp"
#include "blocksched/model.hpp"

namespace bsched {

struct FptasOptions {
  // Keep one partial schedule per (load vector, bag assignment).
  bool trim = true;
  // Treat machines as interchangeable: -1 = only for identical machines.
  int symmetry = -1;
};

// Feasibility test at guess C, expressed in the integer units of
// scaled_times(inst). Times are rounded down to multiples of eps*C/n, so an
// accepted schedule has true makespan at most (1+eps)*C.
std::optional<Schedule> fptas_feasible(const Instance& inst, const TreeDecomposition& td,
                                       std::int64_t C, Rational eps,
                                       const Budget& budget = Budget(),
                                       const FptasOptions& opts = {});

// Binary search over integer guesses; makespan at most (1+eps) times optimal.
Schedule fptas(const Instance& inst, Rational eps, const Budget& budget = Budget(),
               const FptasOptions& opts = {});

}  // namespace bsched
