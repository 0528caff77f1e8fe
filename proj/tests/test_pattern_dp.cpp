#include <doctest.h>

#include <chrono>

#include "blocksched/errors.hpp"
#include "blocksched/oracle.hpp"
#include "blocksched/pattern_dp.hpp"
#include "support.hpp"

using namespace bsched;
using namespace testing_support;

TEST_CASE("base pattern sets") {
  const auto e = empty_pattern(3, 2);
  REQUIRE(e.size() == 1);
  CHECK(e.patterns().front() == make_pattern({0, 0, 0}, {3, 0, 0}));
  const auto s = simplicial_pattern(4, 3, 2);
  REQUIRE(s.size() == 1);
  CHECK(s.patterns().front() == make_pattern({0, 1, 0}, {2, 0, 0}));
  CHECK(s.coloring(0).size() == 1);
  CHECK(to_string(s.patterns().front()) == "(0,1,0;2,0,0)");
}

TEST_CASE("sample coloring of the nine-vertex example") {
  const auto inst = worked_example();
  const auto root = all_patterns(inst.graph, 0, 3, 3);
  REQUIRE(root.size() == 1);
  const auto col = root.coloring(0);
  REQUIRE(col.size() == 9);
  Schedule s;
  s.assign.assign(9, -1);
  for (auto [v, c] : col) s.assign[v] = c;
  CHECK(is_feasible(inst, s));
  CHECK(makespan(inst, s) == ExactTime(3));
}

TEST_CASE("bounded makespan decision agrees with the oracle") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 1 + seed % 9;
    const int m = 2 + seed % 3;
    const BFunction bf = seed % 3 == 0 ? BFunction::Min : seed % 3 == 1 ? BFunction::Avg : BFunction::Max;
    const auto inst = random_identical(n, m, bf, ProcDist::Unit, seed);
    const auto opt = brute_force(inst).optimum;
    for (int k = 1; k <= n; ++k) {
      const auto s = decide_bounded_makespan(inst, k);
      CHECK(s.has_value() == (ExactTime(k) >= opt));
      if (s) {
        CHECK(is_feasible(inst, *s));
        CHECK(makespan(inst, *s) <= ExactTime(k));
      }
    }
    const auto ex = exact_unit_cmax(inst);
    CHECK(ExactTime(ex.k) == opt);
  }
}

TEST_CASE("disconnected graphs") {
  const auto inst = identical_instance(7, {{0, 1}, {2, 3, 4}, {5, 6}}, 3);
  CHECK_FALSE(decide_bounded_makespan(inst, 2).has_value());
  const auto s = decide_bounded_makespan(inst, 3);
  REQUIRE(s.has_value());
  CHECK(is_feasible(inst, *s));
  const auto iso = identical_instance(4, {}, 2);
  CHECK(exact_unit_cmax(iso).k == 2);
}

TEST_CASE("pattern sets report budget exhaustion") {
  const auto inst = random_identical(60, 6, BFunction::Avg, ProcDist::Unit, 9);
  CHECK_THROWS_AS(decide_bounded_makespan(inst, 10, Budget(std::chrono::milliseconds(0), 1024)),
                  BudgetExceeded);
}
