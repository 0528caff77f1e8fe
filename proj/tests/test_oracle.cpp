#include <doctest.h>

#include <functional>
#include <optional>

#include "blocksched/errors.hpp"
#include "blocksched/oracle.hpp"
#include "support.hpp"

using namespace bsched;
using namespace testing_support;

namespace {

// Plain enumeration of all m^n assignments.
ExactTime enumerate(const Instance& inst) {
  const int n = inst.n(), m = inst.m();
  std::vector<int> a(n, 0);
  std::optional<ExactTime> best;
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      Schedule s{a};
      if (!is_feasible(inst, s)) return;
      const auto ms = makespan(inst, s);
      if (!best || ms < *best) best = ms;
      return;
    }
    for (int i = 0; i < m; ++i) {
      a[j] = i;
      rec(j + 1);
    }
  };
  rec(0);
  return *best;
}

}  // namespace

TEST_CASE("paper instances") {
  CHECK(brute_force(hard_instance(3, 3)).optimum == ExactTime(3));
  CHECK(brute_force(worked_example()).optimum == ExactTime(3));
}

TEST_CASE("single job") {
  auto inst = identical_instance(1, {}, 2, {7});
  CHECK(brute_force(inst).optimum == ExactTime(7));
  inst.env = MachineEnv::uniform({3, 1});
  CHECK(brute_force(inst).optimum == ExactTime(7, 3));
  inst.env = MachineEnv::unrelated({{9}, {4}});
  inst.proc.clear();
  CHECK(brute_force(inst).optimum == ExactTime(4));
}

TEST_CASE("pruned search matches plain enumeration") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 1 + seed % 7;
    const int m = 2 + seed % 2;
    const BFunction bf = seed % 3 == 0 ? BFunction::Min : seed % 3 == 1 ? BFunction::Avg : BFunction::Max;
    const Instance insts[] = {random_identical(n, m, bf, ProcDist::P0, seed),
                              random_uniform(n, m, bf, ProcDist::P0, {1, 2, 5}, seed),
                              random_unrelated(n, m, bf, seed)};
    for (const auto& inst : insts) {
      const auto r = brute_force(inst);
      CHECK(is_feasible(inst, r.schedule));
      CHECK(makespan(inst, r.schedule) == r.optimum);
      CHECK(r.optimum == enumerate(inst));
      OracleOptions plain;
      plain.prune = false;
      CHECK(brute_force(inst, plain).optimum == r.optimum);
    }
  }
}

TEST_CASE("fixed assignments and limits") {
  const auto inst = worked_example();
  OracleOptions opts;
  opts.fixed.assign(9, -1);
  opts.fixed[0] = 2;
  opts.fixed[1] = 2;
  CHECK_THROWS_AS(brute_force(inst, opts), Infeasible);
  opts.fixed[1] = 0;
  const auto r = brute_force(inst, opts);
  CHECK(r.schedule.assign[0] == 2);
  CHECK(r.optimum == ExactTime(3));
  OracleOptions small;
  small.cap = 5;
  CHECK_THROWS_AS(brute_force(inst, small), CapExceeded);
  CHECK_THROWS_AS(brute_force(identical_instance(3, {{0, 1, 2}}, 2)), Infeasible);
}
