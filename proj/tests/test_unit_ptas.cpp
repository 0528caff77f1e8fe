#include <doctest.h>

#include "blocksched/errors.hpp"
#include "blocksched/oracle.hpp"
#include "blocksched/pattern_dp.hpp"
#include "blocksched/unit_ptas.hpp"
#include "support.hpp"

using namespace bsched;
using namespace testing_support;

TEST_CASE("nine-vertex example falls through to the treewidth DP") {
  const auto r = ptas_trace(worked_example(), Rational(3, 4));
  CHECK(r.tag == PtasPhase::CT);
  CHECK(to_string(r.tag) == "C+T");
  CHECK(makespan(worked_example(), r.schedule) == ExactTime(3));
}

TEST_CASE("a full clique is found at level one") {
  const auto inst = identical_instance(4, {{0, 1, 2, 3}}, 4);
  for (Rational eps : {Rational(1, 10), Rational(1), Rational(2)}) {
    const auto r = ptas_trace(inst, eps);
    CHECK(r.tag == PtasPhase::C);
    CHECK(r.k == 1);
    CHECK(makespan(inst, r.schedule) == ExactTime(1));
  }
  // 2/eps < 1 skips the bounded search entirely
  const auto r = ptas_trace(inst, Rational(3));
  CHECK(r.k == 0);
  CHECK(r.tag == PtasPhase::CG);
  CHECK(makespan(inst, r.schedule) == ExactTime(1));
}

TEST_CASE("greedy branch on many machines") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    for (auto bf : {BFunction::Min, BFunction::Avg, BFunction::Max}) {
      const auto inst = random_identical(40, 8, bf, ProcDist::Unit, seed);
      const auto r = ptas_trace(inst, Rational(1));
      CHECK(is_feasible(inst, r.schedule));
      CHECK(makespan(inst, r.schedule) <= 2 * identical_lower_bound(inst) + 0);
      CHECK(makespan(inst, r.schedule) <= ExactTime(2) * ExactTime((40 + 7) / 8 + 1));
    }
  }
}

TEST_CASE("phase one returns certified optima") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_identical(3 + seed % 9, 3, BFunction::Avg, ProcDist::Unit, seed);
    const auto r = ptas_trace(inst, Rational(1, 3));
    CHECK(makespan(inst, r.schedule) <= ExactTime(4, 3) * brute_force(inst).optimum);
    if (r.tag == PtasPhase::C) {
      CHECK(makespan(inst, r.schedule) == ExactTime(r.k));
      if (r.k > 1) CHECK_FALSE(decide_bounded_makespan(inst, r.k - 1).has_value());
    }
    const auto early = ptas_trace(inst, Rational(1, 3), Budget(), true);
    CHECK(early.tag == r.tag);
    CHECK(makespan(inst, early.schedule) == makespan(inst, r.schedule));
  }
}

TEST_CASE("input checks") {
  auto inst = identical_instance(3, {{0, 1, 2}}, 2);
  CHECK_THROWS_AS(ptas_unit(inst, Rational(1)), Infeasible);
  inst = identical_instance(2, {{0, 1}}, 2, {1, 2});
  CHECK_THROWS_AS(ptas_unit(inst, Rational(1)), InvalidInput);
  inst = identical_instance(2, {{0, 1}}, 2);
  CHECK_THROWS_AS(ptas_unit(inst, Rational(0)), InvalidInput);
}
