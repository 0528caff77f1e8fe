#include "blocksched/io.hpp"

#include <cctype>
#include <cstdlib>

#include "blocksched/errors.hpp"

namespace bsched {

using nlohmann::json;

json graph_to_json(const BlockCutTree& g) {
  return json{{"n", g.n()}, {"blocks", g.blocks()}};
}

BlockCutTree graph_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    auto blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    return BlockCutTree::from_blocks(n, blocks);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad graph JSON: ") + e.what());
  }
}

json instance_to_json(const Instance& inst) {
  json env;
  switch (inst.env.kind) {
    case EnvKind::Identical:
      env = json{{"kind", "identical"}, {"m", inst.m()}};
      break;
    case EnvKind::Uniform:
      env = json{{"kind", "uniform"}, {"m", inst.m()}, {"speeds", inst.env.speeds}};
      break;
    case EnvKind::Unrelated:
      env = json{{"kind", "unrelated"}, {"m", inst.m()}, {"times", inst.env.times}};
      break;
  }
  json out{{"graph", graph_to_json(inst.graph)}, {"env", env}};
  if (inst.env.kind != EnvKind::Unrelated) out["proc"] = inst.proc;
  return out;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  try {
    inst.graph = graph_from_json(j.at("graph"));
    const auto& env = j.at("env");
    const std::string kind = env.at("kind").get<std::string>();
    if (kind == "identical") {
      inst.env = MachineEnv::identical(env.at("m").get<int>());
    } else if (kind == "uniform") {
      inst.env = MachineEnv::uniform(env.at("speeds").get<std::vector<std::int64_t>>());
      if (env.contains("m") && env.at("m").get<int>() != inst.env.m)
        throw InvalidInput("m disagrees with speed list");
    } else if (kind == "unrelated") {
      inst.env = MachineEnv::unrelated(
          env.at("times").get<std::vector<std::vector<std::int64_t>>>());
      if (env.contains("m") && env.at("m").get<int>() != inst.env.m)
        throw InvalidInput("m disagrees with time matrix");
    } else {
      throw InvalidInput("unknown machine environment '" + kind + "'");
    }
    if (j.contains("proc")) inst.proc = j.at("proc").get<std::vector<std::int64_t>>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad instance JSON: ") + e.what());
  }
  inst.validate();
  return inst;
}

json schedule_to_json(const Schedule& s) { return json{{"assign", s.assign}}; }

Schedule schedule_from_json(const json& j) {
  try {
    return Schedule{j.at("assign").get<std::vector<int>>()};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad schedule JSON: ") + e.what());
  }
}

Rational parse_rational(const std::string& text) {
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  try {
    if (slash != std::string::npos) {
      const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      if (!digits(a) || !digits(b)) throw InvalidInput("bad rational '" + text + "'");
      const auto den = std::stoll(b);
      if (den == 0) throw InvalidInput("zero denominator");
      return Rational(std::stoll(a), den);
    }
    if (dot != std::string::npos) {
      const std::string a = text.substr(0, dot), b = text.substr(dot + 1);
      if ((!a.empty() && !digits(a)) || !digits(b) || b.size() > 12)
        throw InvalidInput("bad decimal '" + text + "'");
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < b.size(); ++i) scale *= 10;
      return Rational((a.empty() ? 0 : std::stoll(a)) * scale + std::stoll(b), scale);
    }
    if (!digits(text)) throw InvalidInput("bad rational '" + text + "'");
    return Rational(std::stoll(text));
  } catch (const std::out_of_range&) {
    throw InvalidInput("rational out of range '" + text + "'");
  }
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_fixed2(const Rational& r) {
  const bool neg = r < 0;
  const Rational a = neg ? -r : r;
  // round(a * 100) half up
  const __int128 num = static_cast<__int128>(a.numerator()) * 200 + a.denominator();
  const __int128 den = static_cast<__int128>(a.denominator()) * 2;
  const long long cents = static_cast<long long>(num / den);
  std::string frac = std::to_string(cents % 100);
  if (frac.size() < 2) frac = "0" + frac;
  return (neg && cents != 0 ? "-" : "") + std::to_string(cents / 100) + "." + frac;
}

}  // namespace bsched
