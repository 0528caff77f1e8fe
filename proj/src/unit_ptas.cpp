#include "blocksched/unit_ptas.hpp"

#include <algorithm>

#include "blocksched/errors.hpp"
#include "blocksched/greedy.hpp"
#include "blocksched/pattern_dp.hpp"
#include "blocksched/tw_fptas.hpp"

namespace bsched {

std::string to_string(PtasPhase phase) {
  switch (phase) {
    case PtasPhase::C: return "C";
    case PtasPhase::CT: return "C+T";
    case PtasPhase::CG: return "C+G";
  }
  return "?";
}

UnitPtasResult ptas_trace(const Instance& inst, Rational eps, const Budget& budget,
                          bool early_abort) {
  if (inst.env.kind != EnvKind::Identical || !inst.unit_jobs())
    throw InvalidInput("ptas-unit needs unit jobs on identical machines");
  if (eps <= 0) throw InvalidInput("epsilon must be positive");
  if (inst.graph.max_block_size() > inst.m()) throw Infeasible("a block is larger than m");
  const int n = inst.n(), m = inst.m();
  UnitPtasResult res;
  if (n == 0) {
    res.k = 0;
    return res;
  }
  // floor(2 / eps) with eps = a / b
  const std::int64_t kmax = 2 * eps.denominator() / eps.numerator();
  const int start = early_abort ? (n + m - 1) / m : 1;
  for (std::int64_t k = start; k <= kmax && k <= n; ++k) {
    res.k = static_cast<int>(k);
    if (auto s = decide_bounded_makespan(inst, static_cast<int>(k), budget)) {
      res.schedule = std::move(*s);
      res.tag = PtasPhase::C;
      return res;
    }
  }
  if (Rational(m) <= Rational(2) / eps + 1) {
    res.schedule = fptas(inst, Rational(1, n + 1), budget, FptasOptions{true, 1});
    res.tag = PtasPhase::CT;
  } else {
    res.schedule = greedy_schedule(inst);
    res.tag = PtasPhase::CG;
  }
  return res;
}

Schedule ptas_unit(const Instance& inst, Rational eps, const Budget& budget) {
  return ptas_trace(inst, eps, budget).schedule;
}

}  // namespace bsched
