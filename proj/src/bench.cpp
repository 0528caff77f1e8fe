#include "blocksched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "blocksched/errors.hpp"
#include "blocksched/greedy.hpp"
#include "blocksched/io.hpp"
#include "blocksched/kblock.hpp"
#include "blocksched/oracle.hpp"
#include "blocksched/pattern_dp.hpp"
#include "blocksched/tw_fptas.hpp"
#include "blocksched/uniform_flow.hpp"
#include "blocksched/unit_ptas.hpp"

namespace bsched {

ProcDist parse_proc(const std::string& name) {
  if (name == "unit") return ProcDist::Unit;
  if (name == "p0") return ProcDist::P0;
  if (name == "p1") return ProcDist::P1;
  if (name == "p2") return ProcDist::P2;
  throw InvalidInput("unknown processing time distribution: " + name);
}

std::string to_string(ProcDist d) {
  switch (d) {
    case ProcDist::Unit: return "unit";
    case ProcDist::P0: return "p0";
    case ProcDist::P1: return "p1";
    case ProcDist::P2: return "p2";
  }
  return "?";
}

BFunction parse_bfunction(const std::string& name) {
  if (name == "min") return BFunction::Min;
  if (name == "avg") return BFunction::Avg;
  if (name == "max") return BFunction::Max;
  throw InvalidInput("unknown b-function: " + name);
}

std::string to_string(BFunction b) {
  switch (b) {
    case BFunction::Min: return "min";
    case BFunction::Avg: return "avg";
    case BFunction::Max: return "max";
  }
  return "?";
}

std::vector<std::int64_t> named_speeds(const std::string& name, int m) {
  static const std::map<std::pair<std::string, int>, std::vector<std::int64_t>> sets = {
      {{"s5", 4}, {5, 5, 5, 1}},
      {{"s5", 6}, {5, 5, 5, 5, 1, 1}},
      {{"s5", 8}, {5, 5, 5, 5, 5, 2, 1, 1}},
      {{"s25", 4}, {23, 21, 21, 4}},
      {{"s25", 6}, {25, 23, 21, 21, 4, 4}},
      {{"s25", 8}, {25, 23, 23, 21, 21, 6, 4, 4}},
  };
  auto it = sets.find({name, m});
  if (it == sets.end())
    throw InvalidInput("no speed set " + name + " for m=" + std::to_string(m));
  return it->second;
}

namespace {

std::vector<int> int_list(const nlohmann::json& j, const char* field) {
  std::vector<int> out;
  if (j.is_number_integer()) {
    out.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (!x.is_number_integer()) throw InvalidInput(std::string("bad entry in ") + field);
      out.push_back(x.get<int>());
    }
  } else {
    throw InvalidInput(std::string("bad field ") + field);
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string eps_label(const std::optional<Rational>& eps) {
  return eps ? format_rational(*eps) : "exact";
}

Rational sum_over_capacity(const Instance& inst) {
  std::int64_t p = 0, s = 0;
  for (auto x : inst.proc) p += x;
  for (auto x : inst.speeds()) s += x;
  return Rational(p, s);
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("config must be an object");
  ExperimentConfig cfg;
  try {
    if (!j.contains("n") || !j.contains("m")) throw InvalidInput("config needs n and m");
    cfg.n = int_list(j.at("n"), "n");
    cfg.m = int_list(j.at("m"), "m");
    if (j.contains("b")) cfg.b = parse_bfunction(j.at("b").get<std::string>());
    if (j.contains("proc")) cfg.proc = parse_proc(j.at("proc").get<std::string>());
    if (j.contains("alg")) cfg.alg = j.at("alg").get<std::string>();
    if (j.contains("eps")) {
      const auto& e = j.at("eps");
      const std::string text = e.is_string() ? e.get<std::string>() : e.dump();
      if (text != "exact") cfg.eps = parse_rational(text);
    }
    if (j.contains("instances")) cfg.instances = j.at("instances").get<int>();
    if (j.contains("timeout_ms")) cfg.timeout_ms = j.at("timeout_ms").get<std::int64_t>();
    if (j.contains("mem_mb")) cfg.mem_mb = j.at("mem_mb").get<std::int64_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("reference")) cfg.reference = j.at("reference").get<std::string>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("speeds")) {
      const auto& s = j.at("speeds");
      if (s.is_string()) {
        const std::string name = s.get<std::string>();
        if (name == "identical" || name == "default") {
          cfg.speeds.kind = SpeedSpec::Kind::Identical;
        } else {
          cfg.speeds.kind = SpeedSpec::Kind::Named;
          cfg.speeds.name = name;
        }
      } else if (s.is_array()) {
        cfg.speeds.kind = SpeedSpec::Kind::Explicit;
        cfg.speeds.values = s.get<std::vector<std::int64_t>>();
      } else if (s.is_object() && s.contains("range")) {
        cfg.speeds.kind = SpeedSpec::Kind::Range;
        cfg.speeds.lo = s.at("range").at(0).get<std::int64_t>();
        cfg.speeds.hi = s.at("range").at(1).get<std::int64_t>();
      } else {
        throw InvalidInput("bad speeds");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad config: ") + e.what());
  }
  if (cfg.instances < 0) throw InvalidInput("instances must be non-negative");
  if (cfg.timeout_ms < 0 || cfg.mem_mb < 0) throw InvalidInput("budgets must be non-negative");
  if (cfg.workers < 1) throw InvalidInput("workers must be positive");
  if (cfg.eps && *cfg.eps <= 0) throw InvalidInput("epsilon must be positive");
  for (int x : cfg.n)
    if (x < 1) throw InvalidInput("n must be positive");
  for (int x : cfg.m)
    if (x < 2) throw InvalidInput("m must be at least 2");
  if (cfg.speeds.kind == SpeedSpec::Kind::Range &&
      (cfg.speeds.lo < 1 || cfg.speeds.hi < cfg.speeds.lo))
    throw InvalidInput("bad speed range");
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), cfg.alg) == names.end())
    throw InvalidInput("unknown algorithm: " + cfg.alg);
  if (cfg.reference != "avg" && cfg.reference != "lb" && cfg.reference != "oracle" &&
      std::find(names.begin(), names.end(), cfg.reference) == names.end())
    throw InvalidInput("unknown reference: " + cfg.reference);
  return cfg;
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t instance) {
  return splitmix(splitmix(splitmix(seed) ^ cell) ^ instance);
}

Instance random_instance(int n, int m, int b, ProcDist proc, const SpeedSpec& speeds, Rng& rng) {
  std::vector<int> sizes = n == 1 ? std::vector<int>{1} : random_partition(n + b - 1, b, 2, m, rng);
  Instance inst;
  inst.graph = generate_block_graph(std::move(sizes), rng);
  std::int64_t hi = 1;
  switch (proc) {
    case ProcDist::Unit: hi = 1; break;
    case ProcDist::P0: hi = 5; break;
    case ProcDist::P1: hi = 10; break;
    case ProcDist::P2: hi = 20; break;
  }
  std::uniform_int_distribution<std::int64_t> pd(1, hi);
  inst.proc.resize(n);
  for (auto& p : inst.proc) p = pd(rng);
  switch (speeds.kind) {
    case SpeedSpec::Kind::Identical:
      inst.env = MachineEnv::identical(m);
      break;
    case SpeedSpec::Kind::Named:
      inst.env = MachineEnv::uniform(named_speeds(speeds.name, m));
      break;
    case SpeedSpec::Kind::Explicit:
      if (static_cast<int>(speeds.values.size()) != m)
        throw InvalidInput("explicit speed list must have m entries");
      {
        auto v = speeds.values;
        std::sort(v.rbegin(), v.rend());
        inst.env = MachineEnv::uniform(std::move(v));
      }
      break;
    case SpeedSpec::Kind::Range: {
      std::uniform_int_distribution<std::int64_t> sd(speeds.lo, speeds.hi);
      std::vector<std::int64_t> v(m);
      for (auto& s : v) s = sd(rng);
      std::sort(v.rbegin(), v.rend());
      inst.env = MachineEnv::uniform(std::move(v));
      break;
    }
  }
  return inst;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"greedy", "exact-cmax", "ptas-unit", "flow",
                                                 "k-approx", "ptas-uniform", "tw-fptas"};
  return names;
}

SolveOutcome run_algorithm(const std::string& alg, const Instance& inst,
                           std::optional<Rational> eps, std::optional<int> k,
                           const Budget& budget, int threads) {
  SolveOutcome out;
  const Rational e = eps ? *eps : Rational(1, 2);
  if (alg == "greedy") {
    if (inst.env.kind != EnvKind::Identical) throw InvalidInput("greedy needs identical machines");
    out.schedule = greedy_schedule(inst);
  } else if (alg == "exact-cmax") {
    if (inst.env.kind != EnvKind::Identical || !inst.unit_jobs())
      throw InvalidInput("exact-cmax needs unit jobs on identical machines");
    if (k) {
      auto s = decide_bounded_makespan(inst, *k, budget);
      if (!s) throw Infeasible("no schedule with at most k jobs per machine");
      out.schedule = std::move(*s);
    } else {
      out.schedule = exact_unit_cmax(inst, budget).schedule;
    }
  } else if (alg == "ptas-unit") {
    auto r = ptas_trace(inst, e, budget);
    out.schedule = std::move(r.schedule);
    out.tag = to_string(r.tag);
  } else if (alg == "flow") {
    out.schedule = solve_uniform_unit(inst, budget, threads);
  } else if (alg == "k-approx") {
    out.schedule = k_approx(inst, budget);
  } else if (alg == "ptas-uniform") {
    out.schedule = ptas_uniform(inst, e, budget);
  } else if (alg == "tw-fptas") {
    out.schedule = fptas(inst, eps ? *eps : Rational(1, inst.n() + 1), budget);
  } else {
    throw InvalidInput("unknown algorithm: " + alg);
  }
  return out;
}

namespace {

Rational reference_value(const ExperimentConfig& cfg, const Instance& inst, const Budget& budget) {
  if (cfg.reference == "avg") {
    if (inst.env.kind == EnvKind::Unrelated) throw InvalidInput("avg reference needs speeds");
    return sum_over_capacity(inst);
  }
  if (cfg.reference == "lb") {
    if (inst.env.kind == EnvKind::Identical) return identical_lower_bound(inst);
    const auto s = inst.speeds();
    const std::int64_t pmax = *std::max_element(inst.proc.begin(), inst.proc.end());
    return std::max(sum_over_capacity(inst), Rational(pmax, s[0]));
  }
  if (cfg.reference == "oracle") {
    OracleOptions opts;
    opts.cap = std::max(opts.cap, inst.n());
    return brute_force(inst, opts).optimum;
  }
  const auto ref = run_algorithm(cfg.reference, inst, cfg.eps, std::nullopt, budget);
  return makespan(inst, ref.schedule);
}

ReportRow run_cell(const ExperimentConfig& cfg, int cell, int n, int m) {
  ReportRow row;
  row.m = m;
  row.n = n;
  row.b = to_string(cfg.b);
  row.proc = to_string(cfg.proc);
  row.alg = cfg.alg;
  row.eps = eps_label(cfg.eps);
  const int b = b_function(n, m, cfg.b);
  boost::multiprecision::cpp_rational ratio_sum = 0;
  std::int64_t us_sum = 0;
  std::map<std::string, int> tags;
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(instance_seed(cfg.seed, static_cast<std::uint64_t>(cell), static_cast<std::uint64_t>(i)));
    const Instance inst = random_instance(n, m, b, cfg.proc, cfg.speeds, rng);
    const Budget budget(std::chrono::milliseconds(cfg.timeout_ms),
                        static_cast<std::size_t>(cfg.mem_mb) << 20);
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const auto out = run_algorithm(cfg.alg, inst, cfg.eps, std::nullopt, budget);
      const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      if (cfg.timeout_ms > 0 && us > cfg.timeout_ms * 1000)
        throw BudgetExceeded(BudgetExceeded::Kind::Time, "time budget exceeded");
      const Rational ref = reference_value(cfg, inst, Budget());
      const Rational ratio = makespan(inst, out.schedule) / ref;
      ratio_sum += boost::multiprecision::cpp_rational(ratio.numerator(), ratio.denominator());
      us_sum += us;
      ++row.solved;
      if (!out.tag.empty()) ++tags[out.tag];
    } catch (const BudgetExceeded& e) {
      row.status = e.kind() == BudgetExceeded::Kind::Time ? "T" : "M";
      break;
    }
  }
  if (row.solved > 0) {
    // Floor onto a 1e-6 grid; two-decimal rounding of the result is unchanged.
    const boost::multiprecision::cpp_rational mean = ratio_sum / row.solved;
    const boost::multiprecision::cpp_int scaled =
        boost::multiprecision::numerator(mean) * 1000000 / boost::multiprecision::denominator(mean);
    row.mean_ratio = Rational(scaled.convert_to<std::int64_t>(), 1000000);
    row.mean_us = us_sum / row.solved;
  }
  std::string part;
  for (const char* t : {"C", "C+T", "C+G"}) {
    auto it = tags.find(t);
    if (it == tags.end()) continue;
    if (!part.empty()) part += ' ';
    part += std::string(t) + ": " + std::to_string((it->second * 100 + row.solved / 2) / row.solved);
  }
  row.participation = part;
  return row;
}

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::pair<int, int>> cells;
  if (cfg.instances == 0) return {};
  for (int m : cfg.m)
    for (int n : cfg.n) cells.emplace_back(n, m);
  std::vector<ReportRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t c; (c = next++) < cells.size();) {
      try {
        rows[c] = run_cell(cfg, static_cast<int>(c), cells[c].first, cells[c].second);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(cfg.workers, std::max<std::size_t>(1, cells.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "m,n,b,proc,alg,eps,mean_ratio,mean_us,status,participation\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.n << ',' << r.b << ',' << r.proc << ',' << r.alg << ',' << r.eps << ','
        << (r.mean_ratio ? format_fixed2(*r.mean_ratio) : "") << ',' << r.mean_us << ','
        << r.status << ',' << r.participation << '\n';
  }
  return out.str();
}

}  // namespace bsched
