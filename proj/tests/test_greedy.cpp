#include <doctest.h>

#include "blocksched/errors.hpp"
#include "blocksched/greedy.hpp"
#include "blocksched/oracle.hpp"
#include "support.hpp"

using namespace bsched;
using namespace testing_support;

TEST_CASE("tight instance reaches 2 - 1/m") {
  const auto inst = hard_instance(3, 3);
  const auto s = greedy_schedule(inst);
  CHECK(is_feasible(inst, s));
  CHECK(makespan(inst, s) == ExactTime(5));
}

TEST_CASE("loads after each block never exceed the invariant") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int m = 2 + seed % 7;
    const auto inst = random_identical(30, m, BFunction::Avg, ProcDist::P2, seed);
    std::int64_t pmax = *std::max_element(inst.proc.begin(), inst.proc.end());
    bool ok = true;
    greedy_schedule(inst, [&](const std::vector<std::int64_t>& loads) {
      std::int64_t total = 0, top = 0;
      for (auto l : loads) {
        total += l;
        top = std::max(top, l);
      }
      // m * top <= total + m * max(total / m, pmax)
      if (m * top > total + std::max(total, m * pmax)) ok = false;
    });
    CHECK(ok);
  }
}

TEST_CASE("greedy is feasible and within twice the optimum") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int m = 2 + seed % 3;
    const int n = 3 + seed % 7;
    const auto inst = random_identical(n, m, BFunction::Max, ProcDist::P0, seed);
    const auto s = greedy_schedule(inst);
    REQUIRE(is_feasible(inst, s));
    CHECK(makespan(inst, s) <= 2 * brute_force(inst).optimum);
  }
}

TEST_CASE("greedy rejects oversized blocks and other environments") {
  auto inst = identical_instance(3, {{0, 1, 2}}, 2);
  CHECK_THROWS_AS(greedy_schedule(inst), Infeasible);
  inst.env = MachineEnv::uniform({2, 1, 1});
  CHECK_THROWS_AS(greedy_schedule(inst), InvalidInput);
}

TEST_CASE("unit-job machine counts") {
  Rng rng(17);
  for (int it = 0; it < 300; ++it) {
    const int m = std::uniform_int_distribution<int>(2, 8)(rng);
    const int n = std::uniform_int_distribution<int>(1, 60)(rng);
    const auto inst = random_identical(n, m, BFunction::Min, ProcDist::Unit, rng());
    const auto r = greedy_unit_load_bound(inst);
    CHECK(r.holds);
    CHECK(r.bound == (n + m - 2) / (m - 1));
  }
}
