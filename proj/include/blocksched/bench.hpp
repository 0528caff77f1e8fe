#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "blocksched/budget.hpp"
#include "blocksched/graph.hpp"
#include "blocksched/model.hpp"

namespace bsched {

enum class ProcDist { Unit, P0, P1, P2 };

ProcDist parse_proc(const std::string& name);
std::string to_string(ProcDist d);
BFunction parse_bfunction(const std::string& name);
std::string to_string(BFunction b);

// Machine speeds for a cell: identical, one of the named sets, an explicit
// list, or integers drawn from [lo, hi] per instance.
struct SpeedSpec {
  enum class Kind { Identical, Named, Explicit, Range };
  Kind kind = Kind::Identical;
  std::string name;
  std::vector<std::int64_t> values;
  std::int64_t lo = 1, hi = 1;
};

// "s5" and "s25" for m in {4, 6, 8}.
std::vector<std::int64_t> named_speeds(const std::string& name, int m);

struct ExperimentConfig {
  std::vector<int> n;
  std::vector<int> m;
  BFunction b = BFunction::Min;
  ProcDist proc = ProcDist::P0;
  SpeedSpec speeds;
  std::string alg = "greedy";
  std::optional<Rational> eps;  // empty: 1/(n+1)
  int instances = 25;
  std::int64_t timeout_ms = 0;
  std::int64_t mem_mb = 0;
  std::uint64_t seed = 1;
  // "avg", "lb", "oracle" or an algorithm name.
  std::string reference = "avg";
  int workers = 1;
};

// Throws InvalidInput.
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ReportRow {
  int m = 0;
  int n = 0;
  std::string b;
  std::string proc;
  std::string alg;
  std::string eps;
  std::optional<Rational> mean_ratio;
  std::int64_t mean_us = 0;
  std::string status = "OK";  // OK, T or M
  std::string participation;
  int solved = 0;
};

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);
std::string report_csv(const std::vector<ReportRow>& rows);

// Random connected block graph with b blocks of sizes in [2, m] and
// processing times from `proc`.
Instance random_instance(int n, int m, int b, ProcDist proc, const SpeedSpec& speeds, Rng& rng);

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t instance);

struct SolveOutcome {
  Schedule schedule;
  std::string tag;  // participation tag for ptas-unit
};

const std::vector<std::string>& algorithm_names();

// Runs a named algorithm. `k` selects a fixed level for exact-cmax.
SolveOutcome run_algorithm(const std::string& alg, const Instance& inst,
                           std::optional<Rational> eps, std::optional<int> k,
                           const Budget& budget, int threads = 1);

}  // namespace bsched
