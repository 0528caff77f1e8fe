#include <doctest.h>

#include "blocksched/errors.hpp"
#include "blocksched/kblock.hpp"
#include "blocksched/oracle.hpp"
#include "support.hpp"

using namespace bsched;
using namespace testing_support;

TEST_CASE("internal accuracy") {
  CHECK(internal_epsilon(Rational(1)) == Rational(1, 4));
  CHECK(internal_epsilon(Rational(1, 2)) == Rational(1, 8));
  CHECK(internal_epsilon(Rational(1, 4)) == Rational(1, 16));
  for (Rational e : {Rational(1, 3), Rational(2), Rational(1, 10)}) {
    const Rational x = internal_epsilon(e);
    CHECK((1 + x) * (1 + x) <= 1 + e);
    CHECK((1 + 2 * x) * (1 + 2 * x) > 1 + e);
  }
}

TEST_CASE("block-count approximation") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + seed % 7;
    const int m = 2 + seed % 2;
    const auto inst = random_uniform(n, m, BFunction::Avg, ProcDist::P0, {1, 2, 3, 5}, seed);
    const auto s = k_approx(inst);
    CHECK(is_feasible(inst, s));
    CHECK(makespan(inst, s) <= ExactTime(inst.graph.block_count()) * brute_force(inst).optimum);
  }
}

TEST_CASE("configuration search accepts at the optimum") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 2 + seed % 6;
    const auto inst = random_uniform(n, 3, BFunction::Max, ProcDist::P1, {1, 2, 4}, seed);
    const auto opt = brute_force(inst);
    ConfigurationSearch search(inst, opt.optimum, Rational(1, 2));
    REQUIRE(search.run());
    CHECK_FALSE(search.rejected_early());
    const auto s = search.schedule();
    REQUIRE(s.has_value());
    CHECK(is_feasible(inst, *s));
    CHECK(makespan(inst, *s) <= ExactTime(9, 4) * opt.optimum);
    for (int layer = 0; layer <= 3; ++layer) CHECK(search.contains_residual(layer, opt.schedule));
    CHECK(search.machine_order().size() == 3);
  }
}

TEST_CASE("uniform PTAS stays within 1 + eps") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 2 + seed % 7;
    const int m = 2 + seed % 2;
    const auto inst = random_uniform(n, m, BFunction::Min, ProcDist::P0, {1, 3, 5}, seed);
    const auto opt = brute_force(inst).optimum;
    for (Rational eps : {Rational(1, 4), Rational(1)}) {
      const auto s = ptas_uniform(inst, eps);
      CHECK(is_feasible(inst, s));
      CHECK(makespan(inst, s) <= (1 + eps) * opt);
    }
  }
}

TEST_CASE("identical machines are accepted as unit speeds") {
  const auto inst = worked_example();
  CHECK(makespan(inst, ptas_uniform(inst, Rational(1, 2))) <= ExactTime(9, 2));
  auto big = identical_instance(3, {{0, 1, 2}}, 2);
  CHECK_THROWS_AS(k_approx(big), Infeasible);
}
