#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "blocksched/bench.hpp"
#include "blocksched/errors.hpp"
#include "blocksched/io.hpp"
#include "blocksched/oracle.hpp"

using namespace bsched;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kBudget = 2, kBadInput = 3 };

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

SpeedSpec parse_speeds(const std::string& text) {
  SpeedSpec s;
  if (text.empty() || text == "identical") return s;
  if (text == "s5" || text == "s25") {
    s.kind = SpeedSpec::Kind::Named;
    s.name = text;
    return s;
  }
  const auto dash = text.find('-');
  if (dash != std::string::npos) {
    s.kind = SpeedSpec::Kind::Range;
    s.lo = std::stoll(text.substr(0, dash));
    s.hi = std::stoll(text.substr(dash + 1));
    if (s.lo < 1 || s.hi < s.lo) throw InvalidInput("bad speed range " + text);
    return s;
  }
  s.kind = SpeedSpec::Kind::Explicit;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) s.values.push_back(std::stoll(item));
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Makespan scheduling with block-graph conflicts"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::int64_t timeout_ms = 0, mem_mb = 0;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--timeout-ms", timeout_ms, "Time budget per solve (0 = none)");
  app.add_option("--mem-mb", mem_mb, "Memory budget per solve (0 = none)");
  app.fallthrough();

  auto* gen = app.add_subcommand("gen", "Emit a random instance as JSON");
  int gen_n = 10, gen_m = 3;
  std::string gen_b = "min", gen_proc = "unit", gen_speeds = "identical";
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--m", gen_m)->required();
  gen->add_option("--b", gen_b, "min, avg or max")->capture_default_str();
  gen->add_option("--proc", gen_proc, "unit, p0, p1 or p2")->capture_default_str();
  gen->add_option("--speeds", gen_speeds, "identical, s5, s25, a list 5,3,1 or a range 1-5")
      ->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Solve an instance read from --in or stdin");
  std::string in_path, alg = "greedy", eps_text, k_text;
  int threads = 1;
  solve->add_option("--in", in_path, "Instance JSON file");
  solve->add_option("--alg", alg)->capture_default_str();
  solve->add_option("--eps", eps_text, "Rational accuracy, or 'exact'");
  solve->add_option("--k", k_text, "Jobs per machine for exact-cmax, or 'auto'");
  solve->add_option("--parallel", threads, "Worker threads for flow")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  int cap = 12;
  oracle->add_option("--in", in_path, "Instance JSON file");
  oracle->add_option("--cap", cap, "Largest accepted n")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  std::string sched_path;
  validate->add_option("--in", in_path, "Instance JSON file")->required();
  validate->add_option("--schedule", sched_path, "Schedule JSON file (default stdin)");

  auto* bench = app.add_subcommand("bench", "Run an experiment and print CSV");
  std::string config_path;
  bench->add_option("--config", config_path, "Experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  const Budget budget(std::chrono::milliseconds(timeout_ms),
                      static_cast<std::size_t>(mem_mb) << 20);
  try {
    if (*gen) {
      Rng rng(seed);
      const int b = b_function(gen_n, gen_m, parse_bfunction(gen_b));
      const Instance inst =
          random_instance(gen_n, gen_m, b, parse_proc(gen_proc), parse_speeds(gen_speeds), rng);
      std::cout << instance_to_json(inst).dump() << '\n';
    } else if (*solve) {
      const Instance inst = instance_from_json(parse_json(read_all(in_path)));
      std::optional<Rational> eps;
      if (!eps_text.empty() && eps_text != "exact") eps = parse_rational(eps_text);
      if (eps && *eps <= 0) throw InvalidInput("epsilon must be positive");
      std::optional<int> k;
      if (!k_text.empty() && k_text != "auto") {
        try {
          k = std::stoi(k_text);
        } catch (const std::exception&) {
          throw InvalidInput("bad --k value " + k_text);
        }
      }
      const auto out = run_algorithm(alg, inst, eps, k, budget, threads);
      json j = schedule_to_json(out.schedule);
      j["makespan"] = format_rational(makespan(inst, out.schedule));
      if (!out.tag.empty()) j["tag"] = out.tag;
      std::cout << j.dump() << '\n';
    } else if (*oracle) {
      const Instance inst = instance_from_json(parse_json(read_all(in_path)));
      OracleOptions opts;
      opts.cap = cap;
      const auto res = brute_force(inst, opts);
      json j = schedule_to_json(res.schedule);
      j["makespan"] = format_rational(res.optimum);
      std::cout << j.dump() << '\n';
    } else if (*validate) {
      const Instance inst = instance_from_json(parse_json(read_all(in_path)));
      const Schedule s = schedule_from_json(parse_json(read_all(sched_path)));
      const bool ok = is_feasible(inst, s);
      json j{{"feasible", ok}};
      if (ok) j["makespan"] = format_rational(makespan(inst, s));
      std::cout << j.dump() << '\n';
      return ok ? kOk : kInfeasible;
    } else if (*bench) {
      ExperimentConfig cfg = config_from_json(parse_json(read_all(config_path)));
      if (app.get_option("--seed")->count() > 0) cfg.seed = seed;
      if (app.get_option("--timeout-ms")->count() > 0) cfg.timeout_ms = timeout_ms;
      if (app.get_option("--mem-mb")->count() > 0) cfg.mem_mb = mem_mb;
      std::cout << report_csv(run_experiment(cfg));
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Infeasible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
