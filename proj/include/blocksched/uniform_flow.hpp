#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blocksched/budget.hpp"
#include "blocksched/maxflow.hpp"
#include "blocksched/model.hpp"

namespace bsched {

// Machine for each cut-vertex, -1 for every other vertex.
using CutAssignment = std::vector<int>;

struct FlowEdge {
  enum class Kind { SourceJob, JobPair, PairMachine, MachineSink };
  Kind kind;
  int job = -1;
  int block = -1;
  int machine = -1;
  std::int64_t cap = 0;
  int arc = -1;
};

struct FlowNetwork {
  int source = 0;
  int sink = 1;
  std::vector<int> simplicial;  // jobs with a node in the second layer
  std::vector<FlowEdge> edges;
  MaxFlow solver;
};

// Sorted distinct values j / s_i for 1 <= j <= n.
std::vector<ExactTime> candidate_makespans(const Instance& inst);

// Capacity floor(C * s_j) of machine j for unit jobs.
std::int64_t unit_capacity(const Instance& inst, ExactTime C, int machine);

// Adjacent cut-vertices on distinct machines and no machine over capacity
// from the cut-vertices alone.
bool valid_cut_assignment(const Instance& inst, ExactTime C, const CutAssignment& f);

// Throws InvalidAssignment when f is not valid.
FlowNetwork build_flow_network(const Instance& inst, ExactTime C, const CutAssignment& f);

// Schedule extending f with makespan <= C, if the flow saturates.
std::optional<Schedule> extend_cut_assignment(const Instance& inst, ExactTime C,
                                              const CutAssignment& f);

// Optimal schedule for unit jobs on uniform machines.
Schedule solve_uniform_unit(const Instance& inst, const Budget& budget = Budget(),
                            int threads = 1);

}  // namespace bsched
